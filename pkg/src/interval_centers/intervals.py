"""Interval values, samples of intervals, and the distances between intervals.

An interval ``[a, b]`` is equivalently described by its midpoint
``m = (a + b) / 2`` and half-length ``l = (b - a) / 2``.  Point intervals
(``a == b``) are ordinary values, which makes every interval statistic
specialize to the corresponding scalar one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .errors import EmptySample, LowerExceedsUpper, NonFiniteBound

INF = math.inf

#: Exponents with a defined meaning for aggregations: 1, 2 and infinity.
Exponent = Union[int, float]


def check_exponent(p) -> Exponent:
    """Normalize ``p`` to one of ``1``, ``2`` or ``math.inf``.

    Accepts the strings ``"1"``, ``"2"``, ``"inf"`` as well.
    """
    if isinstance(p, str):
        p = p.strip().lower()
        if p in ("inf", "infinity", "oo"):
            return INF
        try:
            p = int(p)
        except ValueError:
            raise ValueError(f"exponent must be 1, 2 or inf, got {p!r}") from None
    if p == 1 or p == 2:
        return int(p)
    if p == INF:
        return INF
    raise ValueError(f"exponent must be 1, 2 or inf, got {p!r}")


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[lower, upper]``."""

    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = float(self.lower), float(self.upper)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise NonFiniteBound(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise LowerExceedsUpper(f"lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def mid(self) -> float:
        return (self.lower + self.upper) / 2

    @property
    def half(self) -> float:
        return (self.upper - self.lower) / 2

    @classmethod
    def from_midlen(cls, mid: float, half: float) -> "Interval":
        return cls(mid - half, mid + half)

    def shift(self, t: float) -> "Interval":
        return Interval(self.lower + t, self.upper + t)

    def __iter__(self):
        yield self.lower
        yield self.upper

    def __repr__(self):
        return f"Interval[{self.lower!r}, {self.upper!r}]"


def make_interval(lower: float, upper: float) -> Interval:
    return Interval(lower, upper)


class IntervalSample(Sequence[Interval]):
    """Non-empty, ordered, immutable collection of intervals."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable):
        parsed = []
        for it in items:
            if isinstance(it, Interval):
                parsed.append(it)
            else:
                lo, hi = it
                parsed.append(Interval(lo, hi))
        if not parsed:
            raise EmptySample("an interval sample needs at least one interval")
        self._items = tuple(parsed)

    def __getitem__(self, i):
        return self._items[i]

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, IntervalSample):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        body = ", ".join(f"[{x.lower:g}, {x.upper:g}]" for x in self._items)
        return f"IntervalSample({body})"

    @property
    def lowers(self) -> list[float]:
        return [x.lower for x in self._items]

    @property
    def uppers(self) -> list[float]:
        return [x.upper for x in self._items]

    @property
    def mids(self) -> list[float]:
        return [x.mid for x in self._items]

    @property
    def halves(self) -> list[float]:
        return [x.half for x in self._items]


def as_sample(data) -> IntervalSample:
    return data if isinstance(data, IntervalSample) else IntervalSample(data)


# -- distances ---------------------------------------------------------------


def _norm2(u: float, v: float, p: Exponent) -> float:
    u, v = abs(u), abs(v)
    if p == 1:
        return u + v
    if p == 2:
        return math.hypot(u, v)
    return max(u, v)


def hausdorff(x1: Interval, x2: Interval) -> float:
    """Hausdorff distance between two intervals, ``max(|a1-a2|, |b1-b2|)``."""
    return max(abs(x1.lower - x2.lower), abs(x1.upper - x2.upper))


def hausdorff_midlen(x1: Interval, x2: Interval) -> float:
    """Same distance as :func:`hausdorff`, written as ``|m1-m2| + |l1-l2|``."""
    return abs(x1.mid - x2.mid) + abs(x1.half - x2.half)


def lp_bounds_dist(x1: Interval, x2: Interval, p: Exponent) -> float:
    """L_p norm of the difference of the (lower, upper) bound vectors."""
    return _norm2(x1.lower - x2.lower, x1.upper - x2.upper, check_exponent(p))


def lp_midlen_dist(x1: Interval, x2: Interval, p: Exponent) -> float:
    """L_p norm of the difference of the (midpoint, half-length) vectors."""
    return _norm2(x1.mid - x2.mid, x1.half - x2.half, check_exponent(p))


class Distance(str, enum.Enum):
    """Selector for the interval distances usable in aggregations."""

    HAUSDORFF = "hausdorff"
    L1_BOUNDS = "l1-bounds"
    L2_BOUNDS = "l2-bounds"
    LINF_BOUNDS = "linf-bounds"
    L1_MIDLEN = "l1-midlen"
    L2_MIDLEN = "l2-midlen"
    LINF_MIDLEN = "linf-midlen"

    @property
    def func(self) -> Callable[[Interval, Interval], float]:
        return _DISTANCE_FUNCS[self]


_DISTANCE_FUNCS = {
    Distance.HAUSDORFF: hausdorff,
    Distance.L1_BOUNDS: lambda x, y: lp_bounds_dist(x, y, 1),
    Distance.L2_BOUNDS: lambda x, y: lp_bounds_dist(x, y, 2),
    Distance.LINF_BOUNDS: lambda x, y: lp_bounds_dist(x, y, INF),
    Distance.L1_MIDLEN: lambda x, y: lp_midlen_dist(x, y, 1),
    Distance.L2_MIDLEN: lambda x, y: lp_midlen_dist(x, y, 2),
    Distance.LINF_MIDLEN: lambda x, y: lp_midlen_dist(x, y, INF),
}


def distance_func(dist) -> Callable[[Interval, Interval], float]:
    """Resolve a :class:`Distance`, its string value, or a callable."""
    if callable(dist) and not isinstance(dist, Distance):
        return dist
    return Distance(dist).func


def aggregate(values: Iterable[float], p: Exponent) -> float:
    """``(sum v**p) ** (1/p)`` for finite ``p``, ``max v`` for ``p = inf``."""
    p = check_exponent(p)
    values = list(values)
    if p == INF:
        return max(values)
    if p == 1:
        return math.fsum(values)
    return math.sqrt(math.fsum(v * v for v in values))
