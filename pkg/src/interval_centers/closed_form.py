"""Central intervals with explicit formulas, and the generic dispersion.

=============  ===  ===========  ==========================================
method         p    distance     center
=============  ===  ===========  ==========================================
median         1    hausdorff    median midpoint, median half-length
midrange       inf  hausdorff    midrange of lower bounds / of upper bounds
mean-bounds    2    l2-bounds    mean lower bound, mean upper bound
mean-midlen    2    l2-midlen    mean midpoint, mean half-length
l2-hausdorff   2    hausdorff    see :mod:`interval_centers.l2_hausdorff`
=============  ===  ===========  ==========================================
"""

from __future__ import annotations

import enum
import statistics
from dataclasses import dataclass

from .intervals import (
    INF,
    Distance,
    Exponent,
    Interval,
    aggregate,
    as_sample,
    check_exponent,
    distance_func,
)


class Method(str, enum.Enum):
    L1_HAUSDORFF = "median"
    LINF_HAUSDORFF = "midrange"
    L2_BOUNDS = "mean-bounds"
    L2_MIDLEN = "mean-midlen"
    L2_HAUSDORFF = "l2-hausdorff"

    @property
    def p(self) -> Exponent:
        return _METHOD_SETTINGS[self][0]

    @property
    def distance(self) -> Distance:
        return _METHOD_SETTINGS[self][1]

    @classmethod
    def for_pair(cls, p, distance) -> "Method":
        """The solver minimizing the ``p``-aggregation of ``distance``."""
        p = check_exponent(p)
        distance = Distance(distance)
        for method, (mp, md) in _METHOD_SETTINGS.items():
            if mp == p and md == distance:
                return method
        raise ValueError(f"no central-interval solver for p={p} with {distance.value}")


_METHOD_SETTINGS = {
    Method.L1_HAUSDORFF: (1, Distance.HAUSDORFF),
    Method.LINF_HAUSDORFF: (INF, Distance.HAUSDORFF),
    Method.L2_BOUNDS: (2, Distance.L2_BOUNDS),
    Method.L2_MIDLEN: (2, Distance.L2_MIDLEN),
    Method.L2_HAUSDORFF: (2, Distance.HAUSDORFF),
}


@dataclass(frozen=True)
class CentralEstimate:
    """A central interval, its dispersion, and how it was obtained."""

    center: Interval
    dispersion: float
    method: Method
    p: Exponent


def eval_dispersion(sample, c: Interval, p=2, dist=Distance.HAUSDORFF) -> float:
    """Aggregate the distances from every sample interval to ``c``.

    ``(sum d_i**p) ** (1/p)`` for finite ``p`` and ``max d_i`` for ``p = inf``.
    """
    d = distance_func(dist)
    return aggregate((d(x, c) for x in as_sample(sample)), p)


def _estimate(sample, center, method) -> CentralEstimate:
    disp = eval_dispersion(sample, center, method.p, method.distance)
    return CentralEstimate(center, disp, method, method.p)


def center_l1_hausdorff(sample) -> CentralEstimate:
    """Median midpoint and median half-length.

    For even sample sizes any value between the two middle order statistics
    minimizes; the average of the two is returned.
    """
    sample = as_sample(sample)
    mu = statistics.median(sample.mids)
    lam = statistics.median(sample.halves)
    return _estimate(sample, Interval.from_midlen(mu, lam), Method.L1_HAUSDORFF)


def center_linf_hausdorff(sample) -> CentralEstimate:
    # The minimizer of max|a_i - alpha| is the midrange (a_min + a_max) / 2.
    # Half the range, (a_max - a_min) / 2, is the attained dispersion, not the
    # location; the published formula conflates the two.
    sample = as_sample(sample)
    a, b = sample.lowers, sample.uppers
    alpha = (min(a) + max(a)) / 2
    beta = (min(b) + max(b)) / 2
    return _estimate(sample, Interval(alpha, beta), Method.LINF_HAUSDORFF)


def center_l2_bounds(sample) -> CentralEstimate:
    sample = as_sample(sample)
    alpha = statistics.fmean(sample.lowers)
    beta = statistics.fmean(sample.uppers)
    # fmean is correctly rounded, so alpha <= beta survives rounding.
    return _estimate(sample, Interval(alpha, beta), Method.L2_BOUNDS)


def center_l2_midlen(sample) -> CentralEstimate:
    """Means of midpoints and half-lengths.

    Averaging is linear, so ``mean(m) -+ mean(l)`` equals the mean of the
    bounds; taking the bound means directly skips a rounding step and keeps
    a single-interval sample exactly in place.
    """
    sample = as_sample(sample)
    center = Interval(statistics.fmean(sample.lowers), statistics.fmean(sample.uppers))
    return _estimate(sample, center, Method.L2_MIDLEN)


def central_interval(sample, method) -> CentralEstimate:
    """Dispatch to the solver registered for ``method``."""
    method = Method(method)
    if method is Method.L2_HAUSDORFF:
        from .l2_hausdorff import center_l2_hausdorff

        return center_l2_hausdorff(sample)
    return _SOLVERS[method](sample)


_SOLVERS = {
    Method.L1_HAUSDORFF: center_l1_hausdorff,
    Method.LINF_HAUSDORFF: center_linf_hausdorff,
    Method.L2_BOUNDS: center_l2_bounds,
    Method.L2_MIDLEN: center_l2_midlen,
}

__all__ = [
    "CentralEstimate",
    "Method",
    "center_l1_hausdorff",
    "center_l2_bounds",
    "center_l2_midlen",
    "center_linf_hausdorff",
    "central_interval",
    "eval_dispersion",
]
