import math
import random

import pytest
from hypothesis import given

from interval_centers import Interval, center_l2_hausdorff
from interval_centers.errors import InfeasibleRectangle
from interval_centers.l2_hausdorff import (
    RectangleSubproblem,
    breakpoints,
    classify,
    scan_rectangles,
    solve_rectangle,
)
from interval_centers.oracle import grid_minimize, rectangle_grid_minimize

from conftest import random_sample, random_samples, samples

S = [(0, 2), (3, 9)]


def F(sample, mu, lam):
    return sum(max((a - mu + lam) ** 2, (b - mu - lam) ** 2) for a, b in sample)


def test_breakpoints():
    bp = breakpoints(S)
    assert bp.m_sorted == (1, 6) and bp.l_sorted == (1, 3)
    bp = breakpoints([(0, 2), (1, 3)])
    assert bp.m_sorted == (1, 2) and bp.l_sorted == (1,)
    bp = breakpoints([(5, 5)])
    assert bp.m_sorted == (5,) and bp.l_sorted == (0,)
    assert bp.shape == (2, 2)
    assert bp.m_bounds(0) == (-math.inf, 5) and bp.l_bounds(1) == (0, math.inf)


def test_classify_examples():
    bp = breakpoints(S)
    # 0-based indices: item 0 is [0,2], item 1 is [3,9]
    assert (bp.m_representative(1), bp.l_representative(1)) == (3.5, 2)
    assert classify(S, bp, 1, 1) == ((), (0, 1))
    assert classify(S, bp, 1, 2) == ((1,), (0,))
    assert classify(S, bp, 1, 0) == ((0,), (1,))


def test_subproblem_sums():
    rp = RectangleSubproblem.build(S, breakpoints(S), 1, 0)
    assert (rp.m_minus, rp.m_plus, rp.l_minus, rp.l_plus) == (1, 6, -math.inf, 1)
    assert (rp.n_a, rp.A, rp.A2, rp.n_b, rp.B, rp.B2) == (1, 0, 0, 1, 9, 81)


def test_solve_rectangle_edge_example():
    sol = solve_rectangle(RectangleSubproblem.build(S, breakpoints(S), 1, 0))
    assert (sol.mu_hat, sol.lambda_hat) == (4.5, 1)
    assert (sol.alpha, sol.beta) == (3.5, 5.5)
    assert sol.value == 24.5 and not sol.degenerate_flag
    assert rectangle_grid_minimize(S, 1, 0).value == pytest.approx(24.5, abs=1e-4)


def test_solve_rectangle_flat_example():
    sol = solve_rectangle(RectangleSubproblem.build(S, breakpoints(S), 1, 1))
    assert (sol.mu_hat, sol.lambda_hat) == (3.5, 2)
    assert sol.value == 24.5 and sol.degenerate_flag
    assert sorted(sol.segment) == [(2.5, 3.0), (4.5, 1.0)]
    assert rectangle_grid_minimize(S, 1, 1).value == pytest.approx(24.5, abs=1e-4)


def test_solve_rectangle_zero_residual():
    # a single lower term and a single upper term that an interval can fit exactly
    rp = RectangleSubproblem(0, 0, -10, 10, -10, 10, (0,), (1,), 1, 1, 2.0, 6.0, 4.0, 36.0)
    sol = solve_rectangle(rp)
    assert sol.case == "interior"
    assert (sol.alpha, sol.beta) == (2, 6) and sol.value == 0


def test_infeasible_rectangle():
    rp = RectangleSubproblem(0, 0, 2, 1, 0, 1, (0,), (), 1, 0, 1.0, 0.0, 1.0, 0.0)
    with pytest.raises(InfeasibleRectangle):
        solve_rectangle(rp)


def test_center_examples():
    e = center_l2_hausdorff([(-1.5, 2.25)])
    assert e.center == Interval(-1.5, 2.25) and e.dispersion == 0
    e = center_l2_hausdorff(S)
    assert e.dispersion**2 == pytest.approx(24.5, abs=1e-9)
    assert e.center.lower == pytest.approx(1.5, abs=1e-12)
    assert e.center.upper == pytest.approx(5.5, abs=1e-12)
    e = center_l2_hausdorff([(0, 2), (4, 6)])
    assert e.center.lower == pytest.approx(2, abs=1e-12)
    assert e.center.upper == pytest.approx(4, abs=1e-12)
    assert e.dispersion**2 == pytest.approx(8, abs=1e-9)


def test_oracle_confirms_goldens():
    r = grid_minimize(S, 2, "hausdorff")
    assert r.value**2 == pytest.approx(24.5, abs=1e-6)
    assert r.center.upper == pytest.approx(5.5, abs=1e-6)
    assert -0.5 - 1e-6 <= r.center.lower <= 3.5 + 1e-6
    r = grid_minimize([(0, 2), (4, 6)], 2, "hausdorff")
    assert r.value**2 == pytest.approx(8, abs=1e-6)


def test_segment_of_minimizers_all_optimal():
    # every point of the reported minimizing segment attains the optimum
    for alpha in (-0.5, 0.0, 1.5, 3.5):
        assert F(S, (alpha + 5.5) / 2, (5.5 - alpha) / 2) == pytest.approx(24.5)
    assert F(S, (-0.6 + 5.5) / 2, (5.5 + 0.6) / 2) > 24.5


def test_matches_oracle_random():
    for sample in random_samples(3, 40):
        e = center_l2_hausdorff(sample)
        o = grid_minimize(sample, 2, "hausdorff")
        assert e.dispersion**2 == pytest.approx(o.value**2, abs=1e-6)
        assert e.center.lower <= e.center.upper


def test_piecewise_objective_matches_full_objective():
    rng = random.Random(5)
    for sample in random_samples(8, 15, n_max=8):
        bp = breakpoints(sample)
        nj, nk = bp.shape
        for _ in range(10):
            j, k = rng.randrange(nj), rng.randrange(nk)
            rp = RectangleSubproblem.build(sample, bp, j, k)
            lo_m = rp.m_minus if math.isfinite(rp.m_minus) else rp.m_plus - 5
            hi_m = rp.m_plus if math.isfinite(rp.m_plus) else rp.m_minus + 5
            lo_l = rp.l_minus if math.isfinite(rp.l_minus) else rp.l_plus - 5
            hi_l = rp.l_plus if math.isfinite(rp.l_plus) else rp.l_minus + 5
            mu, lam = rng.uniform(lo_m, hi_m), rng.uniform(lo_l, hi_l)
            piece = sum((sample[i][0] - mu + lam) ** 2 for i in rp.I_a) + sum(
                (sample[i][1] - mu - lam) ** 2 for i in rp.I_b
            )
            assert piece == pytest.approx(F(sample, mu, lam), rel=1e-9, abs=1e-9)


def test_subproblem_invariants():
    for sample in random_samples(9, 10, n_max=10):
        bp = breakpoints(sample)
        for j in range(bp.shape[0]):
            for k in range(bp.shape[1]):
                rp = RectangleSubproblem.build(sample, bp, j, k)
                assert rp.n_a + rp.n_b == len(sample)
                assert set(rp.I_a) | set(rp.I_b) == set(range(len(sample)))
                assert not set(rp.I_a) & set(rp.I_b)
                if rp.n_a:
                    assert rp.A2 >= rp.A**2 / rp.n_a - 1e-9
                if rp.n_b:
                    assert rp.B2 >= rp.B**2 / rp.n_b - 1e-9
                sol = solve_rectangle(rp)
                assert rp.m_minus <= sol.mu_hat <= rp.m_plus
                assert rp.l_minus <= sol.lambda_hat <= rp.l_plus
                assert sol.value >= 0


def test_solutions_match_rectangle_oracle():
    rng = random.Random(21)
    for _ in range(40):
        sample = random_sample(rng, rng.randint(1, 8))
        bp = breakpoints(sample)
        j, k = rng.randrange(bp.shape[0]), rng.randrange(bp.shape[1])
        sol = solve_rectangle(RectangleSubproblem.build(sample, bp, j, k))
        ref = rectangle_grid_minimize(sample, j, k)
        assert sol.value == pytest.approx(ref.value, abs=1e-5)


def test_incremental_matches_plain():
    for sample in random_samples(13, 30, n_max=25):
        plain = center_l2_hausdorff(sample)
        fast = center_l2_hausdorff(sample, incremental=True)
        assert fast.dispersion == pytest.approx(plain.dispersion, abs=1e-9)
        assert fast.center.lower == pytest.approx(plain.center.lower, abs=1e-6)
        assert fast.center.upper == pytest.approx(plain.center.upper, abs=1e-6)


def test_parallel_scan_is_identical():
    sample = random_samples(17, 1, n_max=20)[0]
    assert scan_rectangles(sample, workers=2) == scan_rectangles(sample, workers=1)


def test_clipped_scan_agrees_when_unconstrained_optimum_is_valid():
    sample = random_samples(19, 1)[0]
    a = center_l2_hausdorff(sample)
    ties = scan_rectangles(sample, clip_nonnegative=True)
    assert min(t[0] for t in ties) == pytest.approx(a.dispersion**2, abs=1e-9)


@given(samples)
def test_degenerate_samples_give_scalar_mean(sample):
    xs = [a for a, _ in sample]
    e = center_l2_hausdorff([(x, x) for x in xs])
    mean = sum(xs) / len(xs)
    assert e.center.lower == pytest.approx(mean, abs=1e-9)
    assert e.center.upper == pytest.approx(mean, abs=1e-9)
    assert e.dispersion**2 == pytest.approx(sum((x - mean) ** 2 for x in xs), abs=1e-9)


@given(samples)
def test_valid_interval_and_not_beaten_by_sample_members(sample):
    e = center_l2_hausdorff(sample)
    assert e.center.lower <= e.center.upper
    for a, b in sample:
        assert e.dispersion**2 <= F(sample, (a + b) / 2, (b - a) / 2) + 1e-9
