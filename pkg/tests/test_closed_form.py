import math
import statistics

import numpy as np
import pytest
from hypothesis import given, strategies as st

from interval_centers import (
    Interval,
    Method,
    center_l1_hausdorff,
    center_l2_bounds,
    center_l2_midlen,
    center_linf_hausdorff,
    eval_dispersion,
)
from interval_centers.intervals import Distance
from interval_centers.oracle import grid_minimize

from conftest import random_samples, samples

S3 = [(0, 2), (1, 5), (4, 6)]
CLOSED = [center_l1_hausdorff, center_linf_hausdorff, center_l2_bounds, center_l2_midlen]


def approx_interval(c, lo, hi, tol=1e-12):
    assert c.lower == pytest.approx(lo, abs=tol)
    assert c.upper == pytest.approx(hi, abs=tol)


def test_eval_dispersion_examples():
    c = Interval(2, 4)
    per_term = [max(abs(a - 2), abs(b - 4)) for a, b in S3]
    assert per_term == [2, 1, 2]
    assert eval_dispersion(S3, c, 1, Distance.HAUSDORFF) == 5
    assert eval_dispersion(S3, c, math.inf, "hausdorff") == 2
    for p in (1, 2, math.inf):
        assert eval_dispersion([(2, 4)] * 4, c, p) == 0


def test_l1_hausdorff_examples():
    e = center_l1_hausdorff([(3, 7)])
    assert e.center == Interval(3, 7) and e.dispersion == 0
    e = center_l1_hausdorff(S3)
    approx_interval(e.center, 2, 4)
    assert e.dispersion == 5
    assert e.method is Method.L1_HAUSDORFF and e.p == 1
    e = center_l1_hausdorff([(-2, -1), (1, 2)])
    approx_interval(e.center, -0.5, 0.5)
    assert e.dispersion == pytest.approx(3)
    # frozen from the brute-force minimizer
    assert grid_minimize(S3, 1, "hausdorff").value == pytest.approx(5, abs=1e-4)


def test_linf_hausdorff_examples():
    e = center_linf_hausdorff([(0, 2)])
    assert e.center == Interval(0, 2) and e.dispersion == 0
    e = center_linf_hausdorff(S3)
    approx_interval(e.center, 2, 4)
    assert e.dispersion == 2
    assert grid_minimize(S3, math.inf, "hausdorff").value == pytest.approx(2, abs=1e-4)
    e = center_linf_hausdorff([(0, 10), (4, 6)])
    approx_interval(e.center, 2, 8)
    assert e.dispersion == 2


def test_linf_is_midrange_not_half_range():
    # the half-range formula would give [0, 0] here, far from the data
    e = center_linf_hausdorff([(10, 12), (14, 20)])
    approx_interval(e.center, 12, 16)
    assert e.dispersion == pytest.approx(max((14 - 10) / 2, (20 - 12) / 2))


def test_l2_bounds_examples():
    approx_interval(center_l2_bounds([(0, 2), (4, 6)]).center, 2, 4)
    e = center_l2_bounds(S3)
    approx_interval(e.center, 5 / 3, 13 / 3)
    assert e.dispersion == pytest.approx(math.sqrt(156 / 9), rel=1e-12)
    assert grid_minimize(S3, 2, "l2-bounds").value == pytest.approx(math.sqrt(156 / 9), abs=1e-4)
    e = center_l2_bounds([(1, 1), (3, 3)])
    approx_interval(e.center, 2, 2)
    assert e.dispersion == pytest.approx(2)


def test_l2_midlen_examples():
    e = center_l2_midlen(S3)
    approx_interval(e.center, 5 / 3, 13 / 3)
    assert e.dispersion == pytest.approx(math.sqrt(26 / 3), rel=1e-12)
    assert grid_minimize(S3, 2, "l2-midlen").value == pytest.approx(math.sqrt(26 / 3), abs=1e-4)
    e = center_l2_midlen([(1.5, 4.25)])
    assert e.center == Interval(1.5, 4.25) and e.dispersion == 0
    approx_interval(center_l2_midlen([(-1, 1), (1, 3)]).center, 0, 2)


def _candidate_values(sample, p, dist, alphas, betas):
    a = np.array([x[0] for x in sample])[:, None]
    b = np.array([x[1] for x in sample])[:, None]
    da, db = np.abs(a - alphas), np.abs(b - betas)
    if dist == "hausdorff":
        d = np.maximum(da, db)
    elif dist == "l2-bounds":
        d = np.hypot(da, db)
    else:
        d = np.hypot(np.abs((a + b) / 2 - (alphas + betas) / 2), np.abs((b - a) / 2 - (betas - alphas) / 2))
    if p == math.inf:
        return d.max(axis=0)
    return (d**p).sum(axis=0) ** (1 / p)


@pytest.mark.parametrize("solver", CLOSED)
def test_beats_random_candidates(solver):
    rng = np.random.default_rng(7)
    for sample in random_samples(11, 20):
        est = solver(sample)
        lo = min(x[0] for x in sample)
        hi = max(x[1] for x in sample)
        u = rng.uniform(lo, hi, size=(2, 10_000))
        alphas, betas = np.minimum(u[0], u[1]), np.maximum(u[0], u[1])
        vals = _candidate_values(sample, est.p, est.method.distance.value, alphas, betas)
        assert est.dispersion <= vals.min() + 1e-9


@given(samples)
def test_l2_centers_coincide(sample):
    eb, em = center_l2_bounds(sample), center_l2_midlen(sample)
    assert abs(eb.center.lower - em.center.lower) <= 1e-12
    assert abs(eb.center.upper - em.center.upper) <= 1e-12
    assert eb.dispersion == pytest.approx(math.sqrt(2) * em.dispersion, rel=1e-12, abs=1e-12)


@given(st.lists(st.floats(-10, 10), min_size=1, max_size=12))
def test_degenerate_samples_are_scalar_statistics(xs):
    sample = [(x, x) for x in xs]
    med = statistics.median(xs)
    mid = (min(xs) + max(xs)) / 2
    mean = statistics.fmean(xs)
    for est, c in [
        (center_l1_hausdorff(sample), med),
        (center_linf_hausdorff(sample), mid),
        (center_l2_bounds(sample), mean),
        (center_l2_midlen(sample), mean),
    ]:
        assert est.center.lower == pytest.approx(c, abs=1e-9)
        assert est.center.upper == pytest.approx(c, abs=1e-9)
    assert center_l1_hausdorff(sample).dispersion == pytest.approx(sum(abs(x - med) for x in xs), abs=1e-9)
    assert center_linf_hausdorff(sample).dispersion == pytest.approx((max(xs) - min(xs)) / 2, abs=1e-9)
    ss = sum((x - mean) ** 2 for x in xs)
    assert center_l2_bounds(sample).dispersion == pytest.approx(math.sqrt(2 * ss), abs=1e-9)
    assert center_l2_midlen(sample).dispersion == pytest.approx(math.sqrt(ss), abs=1e-9)


@pytest.mark.parametrize("solver", CLOSED)
@given(sample=samples, t=st.floats(-50, 50))
def test_shift_equivariance(solver, sample, t):
    e0 = solver(sample)
    e1 = solver([(a + t, b + t) for a, b in sample])
    assert e1.center.lower == pytest.approx(e0.center.lower + t, abs=1e-9)
    assert e1.center.upper == pytest.approx(e0.center.upper + t, abs=1e-9)
    assert e1.dispersion == pytest.approx(e0.dispersion, abs=1e-9)


@given(samples)
def test_linf_center_is_valid_and_dispersion_is_half_range(sample):
    e = center_linf_hausdorff(sample)
    a = [x[0] for x in sample]
    b = [x[1] for x in sample]
    assert e.center.lower <= e.center.upper
    assert e.dispersion == pytest.approx(max(max(a) - min(a), max(b) - min(b)) / 2, abs=1e-12)


@pytest.mark.parametrize("solver", CLOSED)
def test_dispersion_zero_iff_all_equal(solver):
    assert solver([(1, 2)] * 3).dispersion == 0
    assert solver([(1, 2), (1, 2), (1, 3)]).dispersion > 0
