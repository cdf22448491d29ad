import math

import numpy as np
import pytest

from qvlcode import bounds, codec, info
from qvlcode.linalg import basis_source
from qvlcode.schur_weyl import log_block_prob_iid_two_level


class TestErrorBounds:
    def test_vacuous_at_small_n(self):
        # the polynomial prefactor swamps the exponential until n is astronomic
        for n in (2, 50, 400):
            for delta in (0.05, 0.1):
                assert bounds.error_ceiling_bures(n, 2, delta) == 1.0
                assert bounds.error_ceiling_overlap2(n, 2, delta) == 1.0

    def test_zero_radius_vacuous(self):
        assert bounds.error_ceiling_bures(100, 2, 0.0) == 1.0

    def test_clamped_to_unit_interval(self):
        for n in (10, 10**4, 10**7):
            delta = n ** -0.25
            for f in (bounds.error_ceiling_bures, bounds.error_ceiling_overlap2):
                v = f(n, 2, delta)
                assert 0.0 <= v <= 1.0

    def test_schedule_eventually_nonvacuous_and_decreasing(self):
        # log-domain evaluation survives the crossover scale ~ 10^6..10^7
        vals = [bounds.error_ceiling_bures(n, 2, n ** -0.25) for n in (10**6, 4 * 10**6, 10**7, 10**8)]
        assert vals[-1] < 0.5
        nontrivial = [v for v in vals if v < 1.0]
        assert all(a > b for a, b in zip(nontrivial, nontrivial[1:]))

    def test_overlap2_dominates_bures_version(self):
        # (1-x)^2 >= (1-x)^(3/2) on [0,1] makes the overlap-squared RHS larger
        for n in (10**6, 10**7, 10**8):
            delta = n ** -0.25
            assert bounds.error_ceiling_overlap2(n, 2, delta) >= bounds.error_ceiling_bures(n, 2, delta) - 1e-12

    def test_restricted_matches_shape(self):
        n, delta = 10**7, (10**7) ** -0.25
        delta1 = delta - (10**7) ** (-1 / 3)
        v = bounds.restricted_error_ceiling(n, 2, delta, delta1)
        assert 0.0 <= v <= 1.0
        # the unrestricted bound takes an infimum over delta1, so it is tighter
        assert bounds.error_ceiling_bures(n, 2, delta) <= v + 1e-12

    def test_uses_certified_curvature_by_default(self):
        n, delta = 10**7, (10**7) ** -0.25
        loose = bounds.error_ceiling_bures(n, 2, delta, c3_value=0.5)
        tight = bounds.error_ceiling_bures(n, 2, delta, c3_value=1.0)
        assert tight <= loose + 1e-12


class TestOverflowBound:
    def test_trivial_regime(self):
        # below-entropy rates: the divergence term vanishes
        v = bounds.overflow_exponent_floor(100, 2, 0.1, 0.3, (0.7, 0.3))
        assert v == pytest.approx(-(10 / 100) * math.log(102), abs=1e-12)

    def test_dominates_exact_overflow(self):
        spec = (0.7, 0.3)
        rate = info.entropy(spec) + 0.15
        for n in (100, 200, 400):
            delta, _ = codec.delta_schedule(n)
            code = codec.build_code(codec.CodeParams(n=n, d=2, delta=delta))
            logp = codec.log_overflow_probability(code, spec, rate)
            exact = -logp / n if logp > float("-inf") else math.inf
            assert exact >= bounds.overflow_exponent_floor(n, 2, delta, rate, spec) - 1e-9

    def test_converges_to_exponent_for_shrinking_radius(self):
        spec = (0.7, 0.3)
        rate = info.binary_entropy(0.4)
        target = info.optimal_overflow_exponent(rate, spec)
        vals = [bounds.overflow_exponent_floor(n, 2, n ** -0.25, rate, spec)
                for n in (10**4, 10**6, 10**8, 10**12)]
        gaps = [abs(v - target) for v in vals]
        assert all(a >= b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] <= 0.1 * target  # within 10 percent, far along the schedule

    def test_restricted_reduces_to_plain_when_set_covers(self):
        spec = (0.7, 0.3)
        rate = info.binary_entropy(0.4)
        n, delta = 10**6, (10**6) ** -0.25
        cover = tuple((1 - t, t) for t in np.linspace(0.0, 0.5, 26))
        v_plain = bounds.overflow_exponent_floor(n, 2, delta, rate, spec)
        v_restricted = bounds.restricted_overflow_exponent_floor(n, 2, delta, 0.05, cover, rate, spec)
        assert v_restricted == pytest.approx(v_plain, abs=1e-6)

    def test_restricted_far_set_is_infinite(self):
        # allowed spectra far from the entropy contour: no feasible point
        spec = (0.7, 0.3)
        rate = math.log(2) - 1e-3
        v = bounds.restricted_overflow_exponent_floor(10**4, 2, 1e-3, 1e-3, ((1.0, 0.0),), rate, spec)
        assert v == math.inf

    def test_restricted_dominates_exact(self):
        spec = (0.7, 0.3)
        n = 100
        delta, delta1 = codec.delta_schedule(n)
        specs = ((0.7, 0.3), (0.6, 0.4))
        code = codec.build_code(codec.CodeParams(n=n, d=2, delta=delta,
                                                 delta1=delta1, spectrum_set=specs))
        rate = info.entropy(spec) + 0.15
        logp = codec.log_overflow_probability(code, spec, rate)
        exact = -logp / n if logp > float("-inf") else math.inf
        rhs = bounds.restricted_overflow_exponent_floor(n, 2, delta, delta1, specs, rate, spec)
        assert exact >= rhs - 1e-9

    def test_restricted_d3_against_grid_oracle(self):
        # exercises the d >= 3 convex-program route with a nontrivial anchor
        p = np.array([0.5, 0.3, 0.2])
        n = 10**6
        delta = 1e-3
        anchor = (0.42, 0.38, 0.2)
        radius = 0.06
        rate = info.entropy(p) + 0.05
        v = bounds.restricted_overflow_exponent_floor(n, 3, delta, radius, (anchor,), rate, p)
        poly = (5 * 3 / n) * math.log(n + 3)
        inner = v + poly
        reduced = rate - (4 * 3 / n) * math.log(n + 3)
        # oracle: dense grid over q satisfying both constraints; the slack
        # 2*delta only loosens the oracle value by O(delta), within tolerance
        best = math.inf
        m = 220
        anchor_arr = np.array(anchor)
        for i in range(m + 1):
            for j in range(m + 1 - i):
                q = np.array([i, j, m - i - j]) / m
                if info.entropy(q) < reduced:
                    continue
                if np.linalg.norm(q - anchor_arr) > radius:
                    continue
                best = min(best, info.divergence(q, p))
        assert inner <= best + 1e-6          # solver at least as good as the grid
        assert inner >= best - 0.02          # and not wildly below it
        # a covering anchor reproduces the unrestricted floor
        wide = bounds.restricted_overflow_exponent_floor(
            n, 3, delta, 2.0, ((1 / 3, 1 / 3, 1 / 3),), rate, p)
        plain = bounds.overflow_exponent_floor(n, 3, delta, rate, p)
        assert wide == pytest.approx(plain, abs=1e-5)


class TestTailBounds:
    def test_block_ceiling_at_center(self):
        # lam/n = p makes the divergence vanish: ceiling is the polynomial
        v = bounds.block_probability_ceiling((70, 30), (0.7, 0.3), 2)
        assert v == pytest.approx((100 + 2) ** 6, rel=1e-12)

    def test_block_ceiling_dominates(self):
        p = (0.7, 0.3)
        n = 100
        for a in range(50, 101):
            lhs = log_block_prob_iid_two_level(a, n - a, *p)
            assert lhs <= bounds.log_block_probability_ceiling((a, n - a), p, 2) + 1e-9

    def test_box_tail_min_divergence(self):
        p = (0.7, 0.3)
        boxes = [[(0.6, 0.8)]]
        v = bounds.min_divergence_outside_boxes(boxes, p, 2)
        expected = min(info.binary_divergence(0.4, 0.3), info.binary_divergence(0.2, 0.3))
        assert v == pytest.approx(expected, abs=1e-12)

    def test_box_tail_outside_p_gives_zero(self):
        assert bounds.min_divergence_outside_boxes([[(0.9, 0.95)]], (0.7, 0.3), 2) == 0.0

    def test_box_tail_dominates_exact_mass(self):
        p = (0.7, 0.3)
        boxes = [[(0.55, 0.85)]]
        for n in (100, 300):
            lhs = sum(
                math.exp(log_block_prob_iid_two_level(a, n - a, *p))
                for a in range((n + 1) // 2, n + 1)
                if not 0.55 <= a / n <= 0.85
            )
            assert lhs <= bounds.tail_mass_ceiling(boxes, p, n, 2) + 1e-9

    def test_box_tail_d3(self):
        p = (0.5, 0.3, 0.2)
        boxes = [[(0.4, 0.6), (0.2, 0.4)]]
        v = bounds.min_divergence_outside_boxes(boxes, p, 3)
        assert 0.0 < v < 0.1
        # the minimizer sits on a box edge
        edge_vals = []
        for q1 in (0.4, 0.6):
            for q2 in np.linspace(0.2, 0.4, 200):
                q = (q1, q2, 1 - q1 - q2)
                edge_vals.append(info.divergence(q, p))
        for q2 in (0.2, 0.4):
            for q1 in np.linspace(0.4, 0.6, 200):
                q = (q1, q2, 1 - q1 - q2)
                edge_vals.append(info.divergence(q, p))
        assert v == pytest.approx(min(edge_vals), abs=1e-4)


class TestSlowDecayDiagnostics:
    def test_floor_constant_example(self):
        v = bounds.zero_radius_error_floor((0.75, 0.25))
        assert v == pytest.approx(1 - ((1 / 3) ** 1.5 + (2 / 3) ** 1.5), rel=1e-14)
        assert v == pytest.approx(0.26322, abs=1e-5)

    def test_floor_constant_degenerate_source(self):
        assert bounds.zero_radius_error_floor((1.0, 0.0)) == pytest.approx(0.0)

    def test_floor_constant_rejects_flat(self):
        with pytest.raises(ValueError):
            bounds.zero_radius_error_floor((0.5, 0.5))

    def test_zero_radius_error_exceeds_floor_at_large_n(self):
        src = basis_source(2, (0.75, 0.25))
        floor = bounds.zero_radius_error_floor((0.75, 0.25))
        for n in (200, 400):
            code = codec.build_code(codec.CodeParams(n=n, d=2, delta=0.0))
            assert codec.average_error_exact(code, src) >= floor - 1e-9

    def test_rate_ceiling_positive_constant(self):
        # c = r - r^(3/2) > 0 whenever 0 < p2 < p1
        for p1 in (0.6, 0.75, 0.9):
            r = (p1 - (1 - p1)) / p1
            assert r - r**1.5 > 0
            assert bounds.decay_rate_ceiling((p1, 1 - p1), 100) > 0

    def test_diagnostic_rows(self):
        rows = bounds.decay_rate_table((0.75, 0.25), [50, 100, 200])
        rates = [r for _, r, _ in rows]
        assert all(rate > 0 for rate in rates)
        assert all(a > b for a, b in zip(rates, rates[1:]))
        for _, rate, ceiling in rows:
            assert rate <= ceiling


class TestBoundReport:
    def test_satisfied_logic(self):
        r = bounds.BoundReport("x", {}, rhs_value=0.5, lhs_value=0.4)
        assert r.satisfied
        r2 = bounds.BoundReport("x", {}, rhs_value=0.5, lhs_value=0.5 + 2e-9)
        assert not r2.satisfied
        r3 = bounds.BoundReport("x", {}, rhs_value=0.5)
        assert r3.satisfied
