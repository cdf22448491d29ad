"""Classical information quantities, lattice constants, and rate exponents.

All logarithms are natural (nats).  The norm on probability vectors and
on the integer lattice is the Euclidean one throughout; lattice-count
constants below inherit that convention.
"""

from __future__ import annotations

import itertools
import math
import warnings

import numpy as np
import numpy.linalg as npl
from scipy import optimize

from .linalg import hermitianize

INF = float("inf")


def entropy(q) -> float:
    """Shannon entropy in nats, with 0 log 0 = 0."""
    q = np.asarray(q, dtype=float)
    if np.any(q < -1e-12) or abs(q.sum() - 1.0) > 1e-9:
        raise ValueError(f"{q} is not a probability vector")
    pos = q[q > 0]
    return float(-(pos * np.log(pos)).sum())


def binary_entropy(t: float) -> float:
    """h(t) = -t ln t - (1-t) ln(1-t)."""
    return entropy([t, 1.0 - t])


def divergence(q, p) -> float:
    """Relative entropy D(q || p) in nats; +inf outside the support of p."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if q.shape != p.shape:
        raise ValueError("dimension mismatch")
    total = 0.0
    for qi, pi in zip(q, p):
        if qi <= 0.0:
            continue
        if pi <= 0.0:
            return INF
        total += qi * math.log(qi / pi)
    return max(0.0, total)


def binary_divergence(t: float, s: float) -> float:
    """d(t, s) = t ln(t/s) + (1-t) ln((1-t)/(1-s))."""
    return divergence([t, 1.0 - t], [s, 1.0 - s])


def quantum_relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """D(rho || sigma) = Tr rho (log rho - log sigma); +inf off support."""
    rho = hermitianize(np.asarray(rho, dtype=complex))
    sigma = hermitianize(np.asarray(sigma, dtype=complex))
    wr, vr = npl.eigh(rho)
    ws, vs = npl.eigh(sigma)
    tol = 1e-12
    # support condition: rho's range must lie in sigma's range
    kernel = vs[:, ws <= tol]
    if kernel.size and npl.norm(kernel.conj().T @ rho @ kernel) > 1e-10:
        return INF
    ent = float(-(wr[wr > tol] * np.log(wr[wr > tol])).sum())
    log_sigma = (vs * np.log(np.clip(ws, 1e-300, None))) @ vs.conj().T
    cross = float(np.real(np.trace(rho @ log_sigma)))
    return max(0.0, -ent - cross)


def sorted_spectrum(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of a density matrix, descending, clipped and renormalized."""
    w = npl.eigvalsh(hermitianize(np.asarray(rho, dtype=complex)))[::-1]
    w = np.clip(w, 0.0, None)
    return w / w.sum()


# --- lattice constants ------------------------------------------------------

def sum_zero_ball(x: float, d: int) -> list[tuple[int, ...]]:
    """Zero-sum integer vectors in the closed Euclidean ball of radius x.

    Membership compares exact integer squared length against x^2 with a
    1e-9 relative guard, so points at distance exactly x count as inside.
    Sorted descending for reproducible iteration order.
    """
    if x < 0:
        raise ValueError("radius must be nonnegative")
    limit2 = x * x * (1 + 1e-9) + 1e-12
    if d == 2:
        t = 0
        while 2 * (t + 1) * (t + 1) <= limit2:
            t += 1
        return [(z, -z) for z in range(t, -t - 1, -1)]
    reach = int(math.floor(x)) + 1
    out = []
    for head in itertools.product(range(-reach, reach + 1), repeat=d - 1):
        tail = -sum(head)
        vec = head + (tail,)
        if sum(v * v for v in vec) <= limit2:
            out.append(vec)
    return sorted(out, reverse=True)


def c1(x: float, d: int) -> int:
    """Number of zero-sum integer vectors within Euclidean distance x of 0.

    Always at least 1 (the origin); the count used to normalize the
    instrument, so it shares the closed-ball tie convention of
    ``sum_zero_ball``.  d=2 is counted without materializing the ball,
    keeping radii ~1e6 (block lengths ~1e12 on the schedule) cheap.
    """
    if x < 0:
        raise ValueError("radius must be nonnegative")
    if d == 2:
        limit2 = x * x * (1 + 1e-9) + 1e-12
        t = int(math.sqrt(limit2 / 2))
        while 2 * (t + 1) * (t + 1) <= limit2:
            t += 1
        while t > 0 and 2 * t * t > limit2:
            t -= 1
        return 2 * t + 1
    return len(sum_zero_ball(x, d))


def c2(x: float, d: int, grid: int = 40) -> int:
    """Worst-case count of zero-sum lattice points in a shifted radius-x ball.

    The minimum over all real zero-sum offsets of the number of lattice
    points within x.  d=2 is exact (floor(sqrt(2) x)); higher d minimizes
    over a grid on the fundamental cell of the zero-sum lattice, which is
    exact once the grid is finer than the point-count level sets.
    """
    if x < 0:
        raise ValueError("radius must be nonnegative")
    if d == 2:
        # lattice is {t*(1,-1)}: the ball is an interval of length sqrt(2)*x
        # in t, and the adversarial shift leaves floor(sqrt(2)*x) integers
        # inside (exactly sqrt(2)*x when that is an integer, ties inside).
        length = math.sqrt(2) * x
        if abs(length - round(length)) <= 1e-9 * max(1.0, length):
            return int(round(length))
        return int(math.floor(length))
    basis = np.array([np.eye(d)[i] - np.eye(d)[i + 1] for i in range(d - 1)]).T
    best = c1(x, d)
    for coeffs in itertools.product(np.linspace(0.0, 1.0, grid, endpoint=False), repeat=d - 1):
        center = basis @ np.array(coeffs)
        count = 0
        reach = int(math.floor(x + npl.norm(center) + 1))
        rngs = range(-reach, reach + 1)
        for head in itertools.product(rngs, repeat=d - 1):
            k = np.array(head + (-sum(head),), dtype=float)
            if npl.norm(k - center) <= x:
                count += 1
        best = min(best, count)
        if best == 0:
            break
    return best


def c3(d: int, refine: bool = True) -> tuple[float, float]:
    """Curvature constant min over (q, p) of D(q||p) / ||p - q||^2.

    Returns (certified_lower, numeric_estimate).  The certified value 1/2
    follows from Pinsker's inequality D >= ||q-p||_1^2 / 2 and the
    l2 <= l1 norm domination.  The numeric estimate combines a search
    over well-separated pairs with the exact local limit (the minimal
    eigenvalue of the Fisher form on the zero-sum subspace); the ratio is
    numerically meaningless below the separation floor, where the local
    form takes over.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    certified = 0.5
    rng = np.random.default_rng(12345)
    floor = 1e-3

    def ratio(qp: np.ndarray) -> float:
        q = np.clip(qp[:d], 1e-12, None)
        p = np.clip(qp[d:], 1e-12, None)
        q, p = q / q.sum(), p / p.sum()
        dist2 = float(((q - p) ** 2).sum())
        if dist2 < floor**2:
            return INF
        return divergence(q, p) / dist2

    def local_form(p_free: np.ndarray) -> float:
        # lim ratio as q -> p equals half the smallest eigenvalue of
        # diag(1/p) restricted to the zero-sum subspace
        p = np.clip(p_free, 1e-9, None)
        p = p / p.sum()
        basis = np.linalg.qr(np.eye(d)[:, : d - 1] - 1.0 / d)[0]
        form = basis.T @ np.diag(1.0 / p) @ basis
        return 0.5 * float(np.linalg.eigvalsh(form)[0])

    samples = [np.concatenate([rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))])
               for _ in range(400)]
    samples.sort(key=ratio)
    best = ratio(samples[0])
    p_samples = [rng.dirichlet(np.ones(d)) for _ in range(200)]
    p_samples.sort(key=local_form)
    best = min(best, local_form(p_samples[0]))
    if refine:
        for start in samples[:5]:
            res = optimize.minimize(ratio, start, method="Nelder-Mead",
                                    options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
            best = min(best, float(res.fun))
        for start in p_samples[:5]:
            res = optimize.minimize(local_form, start, method="Nelder-Mead",
                                    options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
            best = min(best, float(res.fun))
    return certified, max(certified, best)


# --- exponents --------------------------------------------------------------

def entropy_contour_point(R: float) -> float:
    """The t in (0, 1/2] with binary entropy h(t) = R (R in [0, ln 2])."""
    if not 0.0 <= R <= math.log(2) + 1e-12:
        raise ValueError(f"R = {R} outside [0, ln 2]")
    if R >= math.log(2):
        return 0.5
    if R == 0.0:
        return 0.0
    return float(optimize.brentq(lambda t: binary_entropy(t) - R, 1e-300, 0.5, xtol=1e-15))


def optimal_overflow_exponent(R: float, p_spec, restarts: int = 20, seed: int = 0) -> float:
    """Optimal overflow exponent inf of D(q || p) over {q : H(q) >= R}.

    Zero when H(p) >= R.  d=2 solves the 1-dim problem on the entropy
    contour exactly; higher d runs constrained minimization (SLSQP) from
    ``restarts`` random interior points.  The problem is convex (the
    entropy super-level set is convex, D convex in q), so restarts only
    hedge against active-constraint corner cases.
    """
    p = np.asarray(sorted(p_spec, reverse=True), dtype=float)
    d = len(p)
    if R > math.log(d) + 1e-12:
        raise ValueError(f"R = {R} exceeds ln d = {math.log(d)}: no feasible q")
    if entropy(p) >= R:
        return 0.0
    if d == 2:
        t = entropy_contour_point(R)
        return binary_divergence(t, p[1])
    rng = np.random.default_rng(seed)
    best = INF

    def objective(q):
        return divergence(np.clip(q, 1e-14, None) / np.clip(q, 1e-14, None).sum(), p)

    constraints = [
        {"type": "eq", "fun": lambda q: q.sum() - 1.0},
        {"type": "ineq", "fun": lambda q: entropy(np.clip(q, 0, None) / np.clip(q, 0, None).sum()) - R},
    ]
    bounds = [(1e-12, 1.0)] * d
    starts = [np.ones(d) / d] + [rng.dirichlet(np.ones(d)) for _ in range(restarts - 1)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # SLSQP bound-clipping chatter
        for q0 in starts:
            res = optimize.minimize(objective, q0, method="SLSQP", bounds=bounds,
                                    constraints=constraints, options={"ftol": 1e-12, "maxiter": 500})
            if res.success and res.fun < best:
                best = float(res.fun)
    return max(0.0, best)


def universality_ceiling(R: float, p_state: np.ndarray, family) -> float:
    """Universality ceiling on the overflow exponent at rate R.

    ``family`` is a finite list of (state, admissible_rate) pairs; the
    value is the infimum of D(state || p_state) over members whose
    admissible rate exceeds R (+inf if none qualify).  All states must
    be of one kind: density matrices (matrix relative entropy) or bare
    spectra (classical divergence); mixing the two is ambiguous.
    """
    p_state = np.asarray(p_state)
    best = INF
    for state, rate in family:
        if rate <= R:
            continue
        state = np.asarray(state)
        if state.ndim != p_state.ndim:
            raise ValueError("family and reference must both be spectra or both matrices")
        if state.ndim == 1:
            val = divergence(np.sort(state)[::-1], np.sort(np.asarray(p_state, dtype=float))[::-1])
        else:
            val = quantum_relative_entropy(state, p_state)
        best = min(best, val)
    return best


def min_unitary_divergence(rho: np.ndarray, sigma: np.ndarray) -> float:
    """min over unitaries V of D(rho || V sigma V*) = D(spec rho || spec sigma)."""
    return divergence(sorted_spectrum(rho), sorted_spectrum(sigma))


def rotated_two_level_state(t: float, theta: float) -> np.ndarray:
    """diag(t, 1-t) conjugated by a rotation of angle theta."""
    c, s = math.cos(theta), math.sin(theta)
    u = np.array([[c, -s], [s, c]])
    return u @ np.diag([t, 1.0 - t]) @ u.T


def rotating_family_gap(t1: float, t0: float, theta_fn) -> float:
    """Exponent gap for the rotating two-level family.

    For the one-parameter family rho(t) = R(theta(t)) diag(t, 1-t)
    R(theta(t))^T with t in (0, 1/2), the achievable overflow exponent at
    rate h(t1) is d(t1, t0) while the universality ceiling is
    cos^2(dtheta) d(t1, t0) + sin^2(dtheta) d(t1, 1-t0); their difference
    is sin^2(dtheta) * (d(t1, 1-t0) - d(t1, t0)) >= 0.
    """
    if not (0.0 < t1 < 0.5 and 0.0 < t0 < 0.5):
        raise ValueError("need t1, t0 in (0, 1/2)")
    dtheta = float(theta_fn(t1) - theta_fn(t0))
    return math.sin(dtheta) ** 2 * (binary_divergence(t1, 1.0 - t0) - binary_divergence(t1, t0))
