"""The variable-length code: outcome lattice, instrument, lengths, errors.

The encoder measures which cluster of blocks the n-copy state lies in.
Clusters are indexed by integer vectors k summing to n; cluster k covers
every block label within Euclidean distance n*delta of k, and each block
label is covered by exactly C1 = c1(n*delta, d) clusters, so the
normalized cluster projectors form a complete instrument.  The encoder
then ships the outcome k plus the post-measurement state, truncated to
the covered blocks; the decoder embeds that subspace back.

Everything observable about the code reduces to block probabilities, so
the evaluation routes mirror the three block-probability routes: exact
dense matrices at small n, the i.i.d./Kostka closed forms at large n for
commuting sources, and seeded Monte Carlo as a fallback.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import young
from .info import sorted_spectrum, sum_zero_ball
from .linalg import (
    MAX_TENSOR_DIM,
    DimensionBudgetError,
    Source,
    fidelity,
    joint_eigenbasis,
    partial_trace,
    psd_sqrt,
)
from .schur_weyl import young_projectors

NEG_INF = float("-inf")

# Sentinel outcome for states rejected by a restricted code: only the
# classical flag is sent, no quantum subspace.
REJECT = None


@dataclass(frozen=True)
class CodeParams:
    """Parameters of one instrument: block length, dimension, lattice radii.

    ``delta`` sets the cluster radius (n*delta); ``delta1`` and
    ``spectrum_set`` (a tuple of probability vectors) restrict the
    accepted outcomes to clusters near the listed spectra.
    """

    n: int
    d: int
    delta: float
    delta1: float | None = None
    spectrum_set: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if self.delta1 is not None and not 0 < self.delta1 < self.delta:
            raise ValueError("need 0 < delta1 < delta")
        if (self.spectrum_set is None) != (self.delta1 is None):
            raise ValueError("delta1 and spectrum_set must be given together")

    @property
    def restricted(self) -> bool:
        return self.spectrum_set is not None


def delta_schedule(n: int) -> tuple[float, float]:
    """The radius schedule delta = n^(-1/4), delta1 = n^(-1/4) - n^(-1/3).

    delta1 is positive for every n >= 2; at n = 1 the difference
    degenerates to 0 and delta/2 is substituted.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    delta = n ** (-0.25)
    delta1 = delta - n ** (-1.0 / 3.0)
    if delta1 <= 0:
        delta1 = delta / 2
    return delta, delta1


class VLCode:
    """A built instrument: outcomes, their block clusters, and lengths."""

    def __init__(self, params: CodeParams):
        self.params = params
        n, d = params.n, params.d
        self.labels = young.young_indices(n, d)
        offsets = sum_zero_ball(n * params.delta, d)
        self.c1_count = len(offsets)
        if d == 2:
            self.window_halfwidth = max(z[0] for z in offsets)
        blocks: dict[tuple[int, ...], set] = {}
        for lam in self.labels:
            for z in offsets:
                k = tuple(l + zi for l, zi in zip(lam, z))
                blocks.setdefault(k, set()).add(lam)
        self.outcomes = tuple(sorted(blocks, reverse=True))
        self.blocks = {k: tuple(sorted(blocks[k], reverse=True)) for k in self.outcomes}
        if params.restricted:
            limit = params.delta1 * (1 + 1e-9) + 1e-12
            specs = [np.asarray(s, dtype=float) for s in params.spectrum_set]
            self.accepted = tuple(
                k for k in self.outcomes
                if any(np.linalg.norm(s - np.asarray(k) / n) <= limit for s in specs)
            )
        else:
            self.accepted = self.outcomes
        self.num_symbols = len(self.accepted) + (1 if params.restricted else 0)
        self._dims: dict[tuple[int, ...], int] = {}

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def d(self) -> int:
        return self.params.d

    def subspace_dim(self, k) -> int:
        """Total dimension of the blocks covered by outcome k (exact integer)."""
        k = tuple(k)
        if k not in self._dims:
            if k not in self.blocks:
                raise KeyError(f"unknown outcome {k}")
            self._dims[k] = sum(young.dim_block(lam, self.d) for lam in self.blocks[k])
        return self._dims[k]

    def coding_length(self, k) -> float:
        """ln(number of symbols) + ln(subspace dimension), in nats.

        The reject flag carries no quantum subspace, so only the symbol
        count contributes for it.
        """
        if k is REJECT:
            if not self.params.restricted:
                raise KeyError("this code has no reject symbol")
            return math.log(self.num_symbols)
        return math.log(self.num_symbols) + math.log(self.subspace_dim(k))

    def length_ceiling(self) -> float:
        """Largest possible per-symbol coding length of this code."""
        return max(self.coding_length(k) for k in self.accepted) / self.n


def build_code(params: CodeParams) -> VLCode:
    return VLCode(params)


# --- block cluster expectations ---------------------------------------------

def _comb_float(n: int, k: int) -> float:
    if k < 0 or k > n:
        return 0.0
    try:
        return float(math.comb(n, k))
    except OverflowError:
        return math.exp(math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1))


def _letter_weight_matrix(n: int) -> np.ndarray:
    """X[c, i] = <e|P_(a, n-a)|e> for a basis vector with c zeros, a = amin + i.

    The diagonal block weight dimV * Kostka / binom(n, c); the Kostka
    factor for two rows is the indicator a >= max(c, n - c).
    """
    amin = (n + 1) // 2
    avals = np.arange(amin, n + 1)
    dim_v = np.array([_comb_float(n, n - a) - _comb_float(n, n - a - 1) for a in avals])
    x = np.zeros((n + 1, len(avals)))
    for c in range(n + 1):
        hi = max(c, n - c)
        mask = avals >= hi
        x[c, mask] = dim_v[mask] / _comb_float(n, c)
    return x


def _window_sum_matrix(code: VLCode, x: np.ndarray, outcomes) -> np.ndarray:
    """Per-outcome cluster sums of per-block weights, d=2 sliding window.

    x has one column per block (indexed by the larger part a); returns one
    column per outcome in ``outcomes``.
    """
    n = code.n
    amin = (n + 1) // 2
    t = code.window_halfwidth
    cums = np.concatenate([np.zeros(x.shape[:-1] + (1,)), np.cumsum(x, axis=-1)], axis=-1)
    lo = np.array([max(k[0] - t, amin) - amin for k in outcomes])
    hi = np.array([min(k[0] + t, n) - amin + 1 for k in outcomes])
    hi = np.maximum(hi, lo)
    return cums[..., hi] - cums[..., lo]


def _two_level_letter_distributions(source_diag, n: int):
    """Per-atom-type letter-count distributions for a d=2 commuting source.

    Yields (atom_type_weight, pmf) with pmf[c] the probability that the
    n letters contain c zeros, for every composition of n over the atoms.
    """
    weights, diags = source_diag
    m = len(weights)
    qs = [float(q[0]) for q in diags]
    from scipy.stats import binom as binom_dist

    for tau in young.compositions(n, m):
        w = float(young.multinomial(tau))
        for wj, tj in zip(weights, tau):
            if tj:
                if wj == 0.0:
                    w = 0.0
                    break
                w *= wj**tj
        if w == 0.0:
            continue
        pmf = np.ones(1)
        for qj, tj in zip(qs, tau):
            if tj == 0:
                continue
            pmf = np.convolve(pmf, binom_dist.pmf(np.arange(tj + 1), tj, qj))
        yield w, pmf


def _commuting_diag(source: Source):
    joint = joint_eigenbasis(source.states)
    if joint is None:
        return None
    _, diags = joint
    return source.weights, [np.clip(q, 0.0, None) for q in diags]


def cluster_expectations(code: VLCode, source: Source, exponent: float,
                         samples: int | None = None, seed: int = 0):
    """E over the source of (Tr P_k rho_1 x ... x rho_n)^exponent per outcome.

    Returns (dict outcome -> expectation, stderr or None).  Routes:
    commuting atoms group sequences by atom type and use the diagonal
    block weights (any n); otherwise dense enumeration when the sequence
    count and d^n are small, else counter-seeded Monte Carlo.  Passing
    ``samples`` explicitly forces the Monte Carlo route.
    """
    n, d = code.n, code.d
    diag = None if samples is not None else _commuting_diag(source)
    if diag is not None and d == 2:
        x = _letter_weight_matrix(n)
        m = _window_sum_matrix(code, x, code.outcomes)  # (n+1, #outcomes)
        total = np.zeros(len(code.outcomes))
        for w, pmf in _two_level_letter_distributions(diag, n):
            v = pmf @ m  # pmf always covers all n+1 letter counts
            total += w * np.clip(v, 0.0, 1.0) ** exponent
        return dict(zip(code.outcomes, total)), None
    if diag is not None:
        weights, diags = diag
        out = {k: 0.0 for k in code.outcomes}
        for tau in young.compositions(n, len(weights)):
            w = float(young.multinomial(tau))
            spectra = []
            for wj, tj, qj in zip(weights, tau, diags):
                if tj:
                    w *= wj**tj
                    spectra.extend([qj] * tj)
            if w == 0.0:
                continue
            types = _type_distribution(spectra, d)
            per_block = {
                lam: sum(p * young.exact_block_weight(lam, c) for c, p in types.items())
                for lam in code.labels
            }
            for k in code.outcomes:
                val = float(sum(per_block[lam] for lam in code.blocks[k]))
                out[k] += w * min(1.0, max(0.0, val)) ** exponent
        return out, None
    # dense routes
    if d**n > MAX_TENSOR_DIM:
        raise DimensionBudgetError(
            f"non-commuting source with d^n = {d**n} > {MAX_TENSOR_DIM}"
        )
    projs = young_projectors(n, d)
    cluster = {
        k: sum(projs[lam] for lam in code.blocks[k]) for k in code.outcomes
    }
    m_atoms = source.num_atoms
    if samples is None and m_atoms**n <= 10**6:
        out = {k: 0.0 for k in code.outcomes}
        for seq in itertools.product(range(m_atoms), repeat=n):
            w = 1.0
            for j in seq:
                w *= source.weights[j]
            if w == 0.0:
                continue
            rho = _product_state(source, seq)
            for k in code.outcomes:
                tr = float(np.real(np.einsum("ij,ji->", cluster[k], rho)))
                out[k] += w * min(1.0, max(0.0, tr)) ** exponent
        return out, None
    if samples is None:
        samples = 10**5
    sums = {k: 0.0 for k in code.outcomes}
    sq = 0.0
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        seq = rng.choice(m_atoms, size=n, p=source.weights)
        rho = _product_state(source, seq)
        contrib = 0.0
        for k in code.outcomes:
            tr = float(np.real(np.einsum("ij,ji->", cluster[k], rho)))
            val = min(1.0, max(0.0, tr)) ** exponent
            sums[k] += val
            contrib += val
        sq += contrib * contrib
    out = {k: v / samples for k, v in sums.items()}
    mean_total = sum(out.values())
    var = max(0.0, sq / samples - mean_total**2)
    stderr = math.sqrt(var / samples)
    return out, stderr


def _type_distribution(spectra, d: int) -> dict[tuple[int, ...], float]:
    dist: dict[tuple[int, ...], float] = {(0,) * d: 1.0}
    for q in spectra:
        nxt: dict[tuple[int, ...], float] = {}
        for counts, prob in dist.items():
            for i in range(d):
                if q[i] <= 0.0:
                    continue
                key = counts[:i] + (counts[i] + 1,) + counts[i + 1 :]
                nxt[key] = nxt.get(key, 0.0) + prob * q[i]
        dist = nxt
    return dist


def _product_state(source: Source, seq) -> np.ndarray:
    rho = source.states[seq[0]]
    for j in seq[1:]:
        rho = np.kron(rho, source.states[j])
    return rho


# --- outcome statistics -----------------------------------------------------

def log_outcome_distribution(code: VLCode, spec) -> dict:
    """log P(outcome k) for an i.i.d. source with the given single-copy spectrum.

    Includes the reject flag of a restricted code.  Exact log-domain block
    sums; valid at any n for d = 2, and for moderate n in higher d.
    """
    n, d = code.n, code.d
    spec = np.sort(np.asarray(spec, dtype=float))[::-1]
    logc1 = math.log(code.c1_count)
    if d == 2:
        amin = (n + 1) // 2
        avals = np.arange(amin, n + 1)
        logs = np.empty(len(avals))
        for i, a in enumerate(avals):
            ls = young.log_schur_two_rows(int(a), n - int(a), spec[0], spec[1])
            logs[i] = NEG_INF if ls == NEG_INF else young.log_dim_sym_group((int(a), n - int(a))) + ls
        t = code.window_halfwidth
        out = {}
        for k in code.outcomes:
            lo = max(k[0] - t, amin) - amin
            hi = min(k[0] + t, n) - amin + 1
            window = logs[lo:hi]
            m = np.max(window)
            if m == NEG_INF:
                out[k] = NEG_INF
            else:
                out[k] = float(m + np.log(np.sum(np.exp(window - m)))) - logc1
    else:
        logblock = {}
        for lam in code.labels:
            s = young.schur_poly(lam, spec)
            logblock[lam] = (math.log(s) + young.log_dim_sym_group(lam)) if s > 0 else NEG_INF
        out = {}
        for k in code.outcomes:
            vals = [logblock[lam] for lam in code.blocks[k]]
            m = max(vals)
            if m == NEG_INF:
                out[k] = NEG_INF
            else:
                out[k] = m + math.log(sum(math.exp(v - m) for v in vals)) - logc1
    if code.params.restricted:
        acc = set(code.accepted)
        rest = [out[k] for k in code.outcomes if k not in acc]
        if rest:
            m = max(rest)
            out[REJECT] = (m + math.log(sum(math.exp(v - m) for v in rest))) if m > NEG_INF else NEG_INF
        else:
            out[REJECT] = NEG_INF
        out = {k: out[k] for k in (*code.accepted, REJECT)}
    return out


def outcome_distribution(code: VLCode, state) -> dict:
    """P(outcome) for an i.i.d. spectrum, a Source, or a list of factor states.

    A Source is reduced to the spectrum of its average state: the outcome
    statistics of the instrument depend on the source only through that
    mixture.
    """
    if isinstance(state, Source):
        spec = sorted_spectrum(state.average_state())
        return {k: math.exp(v) for k, v in log_outcome_distribution(code, spec).items()}
    if isinstance(state, (list, tuple)) and np.asarray(state[0]).ndim == 2:
        from .schur_weyl import block_prob_product

        per_block = {lam: block_prob_product(lam, state) for lam in code.labels}
        out = {}
        for k in code.outcomes:
            out[k] = sum(per_block[lam] for lam in code.blocks[k]) / code.c1_count
        if code.params.restricted:
            acc = set(code.accepted)
            out[REJECT] = sum(v for k, v in out.items() if k not in acc)
            out = {k: out[k] for k in (*code.accepted, REJECT)}
        return out
    spec = np.asarray(state, dtype=float)
    return {k: math.exp(v) for k, v in log_outcome_distribution(code, spec).items()}


def log_overflow_probability(code: VLCode, spec, rate: float) -> float:
    """log P{per-symbol coding length >= rate} for an i.i.d. spectrum."""
    logp = log_outcome_distribution(code, spec)
    n = code.n
    selected = [v for k, v in logp.items() if code.coding_length(k) / n >= rate]
    if not selected:
        return NEG_INF
    m = max(selected)
    if m == NEG_INF:
        return NEG_INF
    return m + math.log(sum(math.exp(v - m) for v in selected))


def overflow_probability(code: VLCode, spec, rate: float) -> float:
    v = log_overflow_probability(code, spec, rate)
    return math.exp(v) if v > NEG_INF else 0.0


# --- error functionals ------------------------------------------------------

def average_error_chain(code: VLCode, source: Source, exponent: float = 1.5,
                        samples: int | None = None, seed: int = 0):
    """Average error via the closed expectation chain, 1 - sum E[(Tr P_k rho)^e]/C1.

    Exponent 1.5 is the squared-Bures criterion and equals the
    instrument-simulation value exactly (the tests hold the two routes
    to 1e-9); exponent 2 is the overlap-squared criterion, equal to its
    definition for pure-state ensembles.  Rejected outcomes of a
    restricted code are charged the worst-case error 1.  Returns
    (value, stderr); stderr is None off the Monte Carlo route.
    """
    exps, stderr = cluster_expectations(code, source, exponent, samples=samples, seed=seed)
    acc = sum(exps[k] for k in code.accepted)
    return 1.0 - acc / code.c1_count, stderr


def average_error_exact(code: VLCode, source: Source,
                        samples: int | None = None, seed: int = 0) -> float:
    """Average error of the code on an i.i.d. source (exact route)."""
    return average_error_chain(code, source, 1.5, samples=samples, seed=seed)[0]


def average_error_dprime(code: VLCode, source: Source,
                         samples: int | None = None, seed: int = 0) -> float:
    """Alternative overlap-squared criterion: exponent 2 in the chain."""
    return average_error_chain(code, source, 2.0, samples=samples, seed=seed)[0]


def _instrument_matrices(code: VLCode):
    projs = young_projectors(code.n, code.d)
    return {
        k: sum(projs[lam] for lam in code.blocks[k]) / code.c1_count
        for k in code.outcomes
    }


def average_error_definitional(code: VLCode, source: Source) -> float:
    """Average error by direct instrument simulation (dense matrices).

    Applies sqrt(M_k) . sqrt(M_k), renormalizes, embeds, and averages the
    squared Bures distance over outcomes and atom sequences.  This is the
    defining expression, kept independent of the closed chain so the two
    can check each other.
    """
    n, d = code.n, code.d
    if d**n > MAX_TENSOR_DIM:
        raise DimensionBudgetError(f"d^n = {d**n} too large for the dense route")
    ms = _instrument_matrices(code)
    roots = {k: psd_sqrt(m) for k, m in ms.items()}
    acc = set(code.accepted)
    total = 0.0
    for seq in itertools.product(range(source.num_atoms), repeat=n):
        w = 1.0
        for j in seq:
            w *= source.weights[j]
        if w == 0.0:
            continue
        rho = _product_state(source, seq)
        for k in code.outcomes:
            post = roots[k] @ rho @ roots[k]
            p = float(np.real(np.trace(post)))
            if p <= 1e-15:
                continue
            if k in acc:
                b2 = 1.0 - fidelity(rho, post / p)
            else:
                b2 = 1.0  # reject flag: decoder has no copy, worst case
            total += w * p * b2
    return total


def average_error_prime(code: VLCode, source: Source) -> float:
    """Per-copy error: mean squared Bures distance between each input
    factor and the matching normalized partial trace of the output."""
    n, d = code.n, code.d
    if d**n > MAX_TENSOR_DIM:
        raise DimensionBudgetError(f"d^n = {d**n} too large for the dense route")
    ms = _instrument_matrices(code)
    roots = {k: psd_sqrt(m) for k, m in ms.items()}
    acc = set(code.accepted)
    total = 0.0
    for seq in itertools.product(range(source.num_atoms), repeat=n):
        w = 1.0
        for j in seq:
            w *= source.weights[j]
        if w == 0.0:
            continue
        rho = _product_state(source, seq)
        for k in code.outcomes:
            post = roots[k] @ rho @ roots[k]
            p = float(np.real(np.trace(post)))
            if p <= 1e-15:
                continue
            if k in acc:
                sigma = post / p
                b2 = 0.0
                for i in range(n):
                    red = partial_trace(sigma, d, i)
                    b2 += 1.0 - fidelity(source.states[seq[i]], red)
                b2 /= n
            else:
                b2 = 1.0
            total += w * p * b2
    return total


# --- outcome records and the fixed-length conversion -------------------------

@dataclass(frozen=True)
class OutcomeRecord:
    k: tuple[int, ...] | None
    probability: float
    coding_length: float
    error_contribution: float


def outcome_records(code: VLCode, source: Source,
                    samples: int | None = None, seed: int = 0) -> list[OutcomeRecord]:
    """Per-outcome probability, length, and error contribution for a source."""
    exp1, _ = cluster_expectations(code, source, 1.0, samples=samples, seed=seed)
    exp32, _ = cluster_expectations(code, source, 1.5, samples=samples, seed=seed)
    acc = set(code.accepted)
    records = []
    reject_prob = 0.0
    for k in code.outcomes:
        p = exp1[k] / code.c1_count
        if k in acc:
            contrib = p - exp32[k] / code.c1_count
            records.append(OutcomeRecord(k, p, code.coding_length(k), contrib))
        else:
            reject_prob += p
    if code.params.restricted:
        records.append(OutcomeRecord(REJECT, reject_prob, code.coding_length(REJECT), reject_prob))
    return records


@dataclass(frozen=True)
class FixedLengthReport:
    rate: float
    error_fixed: float
    error_variable: float
    overflow: float
    kept_outcomes: int

    @property
    def slack(self) -> float:
        """RHS minus LHS of the conversion inequality (nonnegative)."""
        return self.overflow - (self.error_fixed - self.error_variable)


def to_fixed_length(code: VLCode, rate: float, source: Source,
                    samples: int | None = None, seed: int = 0) -> FixedLengthReport:
    """Convert to a fixed-rate code: long outcomes become a failure flag.

    Outcomes whose per-symbol length reaches ``rate`` are replaced by a
    classical failure marker decoded to a state outside the input space,
    charged the worst-case squared Bures distance 1.  The report carries
    both errors and the overflow probability; the error increase never
    exceeds the overflow.
    """
    records = outcome_records(code, source, samples=samples, seed=seed)
    n = code.n
    err_fixed = err_vl = overflow = 0.0
    kept = 0
    for rec in records:
        err_vl += rec.error_contribution
        if rec.coding_length / n >= rate:
            err_fixed += rec.probability
            overflow += rec.probability
        else:
            # a short reject flag keeps its variable-length error (already
            # the worst case); kept outcomes keep their quantum payload
            err_fixed += rec.error_contribution
            if rec.k is not REJECT:
                kept += 1
    return FixedLengthReport(rate, err_fixed, err_vl, overflow, kept)
