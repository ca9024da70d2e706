"""Hypercubes (products of intervals) and coordinate-wise statistics on them.

Distances between hypercubes combine per-coordinate interval distances with
an L_q norm.  With the same exponent for the aggregation over items and over
coordinates the objective separates, so the centrocube is the product of the
per-coordinate central intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .closed_form import Method, central_interval
from .errors import DimensionMismatch, EmptySample, ZeroDispersion
from .intervals import Interval, IntervalSample, aggregate, check_exponent, distance_func


@dataclass(frozen=True)
class Hypercube:
    components: tuple

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Interval) else Interval(*c) for c in self.components)
        if not comps:
            raise DimensionMismatch("a hypercube needs at least one coordinate")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __getitem__(self, j) -> Interval:
        return self.components[j]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def as_hypercube(x) -> Hypercube:
    return x if isinstance(x, Hypercube) else Hypercube(tuple(x))


@dataclass(frozen=True)
class HypercubeDataset:
    items: tuple
    names: tuple = ()
    ids: tuple = ()

    def __post_init__(self):
        items = tuple(as_hypercube(x) for x in self.items)
        if not items:
            raise EmptySample("a dataset needs at least one hypercube")
        k = items[0].dim
        for i, x in enumerate(items):
            if x.dim != k:
                raise DimensionMismatch(f"item {i} has dimension {x.dim}, expected {k}")
        names = tuple(self.names) or tuple(f"x{j + 1}" for j in range(k))
        if len(names) != k:
            raise DimensionMismatch(f"{len(names)} variable names for dimension {k}")
        ids = tuple(self.ids) or tuple(str(i + 1) for i in range(len(items)))
        if len(ids) != len(items):
            raise DimensionMismatch(f"{len(ids)} ids for {len(items)} items")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "ids", ids)

    @property
    def dim(self) -> int:
        return self.items[0].dim

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i) -> Hypercube:
        return self.items[i]

    def column(self, j: int) -> IntervalSample:
        return IntervalSample(x[j] for x in self.items)

    def subset(self, indices: Sequence[int]) -> "HypercubeDataset":
        return HypercubeDataset(
            tuple(self.items[i] for i in indices), self.names, tuple(self.ids[i] for i in indices)
        )


def as_dataset(data) -> HypercubeDataset:
    return data if isinstance(data, HypercubeDataset) else HypercubeDataset(tuple(data))


@dataclass(frozen=True)
class DispersionProfile:
    estimates: tuple  # one CentralEstimate per coordinate
    method: Method
    p: object

    @property
    def centers(self) -> tuple:
        return tuple(e.center for e in self.estimates)

    @property
    def dispersions(self) -> tuple:
        return tuple(e.dispersion for e in self.estimates)

    def __len__(self):
        return len(self.estimates)


def _check_dims(x: Hypercube, y: Hypercube):
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim} vs {y.dim}")


def dist_hypercube(x, y, d="hausdorff", q=2) -> float:
    """``(sum_j d(x^j, y^j)**q) ** (1/q)``, or the max over coordinates for ``q = inf``."""
    x, y = as_hypercube(x), as_hypercube(y)
    _check_dims(x, y)
    dfun = distance_func(d)
    return aggregate((dfun(u, v) for u, v in zip(x, y)), q)


def _method_and_p(method, p):
    method = Method(method)
    if p is not None and check_exponent(p) != method.p:
        raise ValueError(
            f"method {method.value} aggregates with p={method.p}; got p={p}"
        )
    return method


def dispersion_profile(data, method, p=None) -> DispersionProfile:
    """Per-coordinate central interval and dispersion."""
    data = as_dataset(data)
    method = _method_and_p(method, p)
    ests = tuple(central_interval(data.column(j), method) for j in range(data.dim))
    return DispersionProfile(ests, method, method.p)


def combined_dispersion(data, cube, method) -> float:
    """Aggregate of all item-to-``cube`` coordinate distances with the method's exponent."""
    data, cube = as_dataset(data), as_hypercube(cube)
    method = Method(method)
    if cube.dim != data.dim:
        raise DimensionMismatch(f"dimensions differ: {cube.dim} vs {data.dim}")
    dfun = method.distance.func
    terms = (dfun(x[j], cube[j]) for x in data for j in range(data.dim))
    return aggregate(terms, method.p)


def centrocube(data, method, p=None) -> tuple[Hypercube, float]:
    """Coordinate-wise centrocube and its combined dispersion.

    For ``p = inf`` the construction is still coordinate-wise; it is not
    claimed to be optimal for the max-of-max objective.
    """
    data = as_dataset(data)
    profile = dispersion_profile(data, method, p)
    cube = Hypercube(profile.centers)
    return cube, combined_dispersion(data, cube, profile.method)


def normalized_dist(x, y, profile: DispersionProfile, d=None, q=None) -> float:
    """Coordinate distances divided by the coordinate dispersions, combined with L_q.

    A zero-dispersion coordinate contributes 0 when the two components agree
    and raises :class:`ZeroDispersion` otherwise.
    """
    x, y = as_hypercube(x), as_hypercube(y)
    _check_dims(x, y)
    if len(profile) != x.dim:
        raise DimensionMismatch(f"profile has {len(profile)} coordinates, items have {x.dim}")
    q = profile.p if q is None else check_exponent(q)
    if q != profile.p:
        raise ValueError(f"q={q} must match the profile exponent p={profile.p}")
    dfun = distance_func(profile.method.distance if d is None else d)
    terms = []
    for j, (u, v, s) in enumerate(zip(x, y, profile.dispersions)):
        num = dfun(u, v)
        if s == 0:
            if num != 0:
                raise ZeroDispersion(f"coordinate {j} has zero dispersion but distance {num}")
            terms.append(0.0)
        else:
            terms.append(num / s)
    return aggregate(terms, q)


__all__ = [
    "DispersionProfile",
    "Hypercube",
    "HypercubeDataset",
    "centrocube",
    "combined_dispersion",
    "dispersion_profile",
    "dist_hypercube",
    "normalized_dist",
]
