"""Dynamic clustering of hypercubes with exact centrocube prototypes.

Alternates two steps, each of which can only lower the criterion
``sum_clusters sum_members D(x, prototype)**p``:

* assignment: every item goes to its nearest prototype (ties to the lowest
  cluster index);
* representation: every non-empty cluster gets its exact centrocube.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import Method, central_interval
from .errors import InvalidConfig, KTooLarge, ZeroDispersion
from .hypercube import Hypercube, as_dataset, dispersion_profile
from .intervals import Distance, IntervalSample, check_exponent
from .l2_hausdorff import center_l2_hausdorff

log = logging.getLogger(__name__)

CLUSTER_DISTANCES = (Distance.HAUSDORFF, Distance.L2_BOUNDS, Distance.L2_MIDLEN)


@dataclass(frozen=True)
class ClusteringConfig:
    k: int
    p: int = 1
    distance: Distance = Distance.HAUSDORFF
    normalize: bool = False
    seed: int = 0
    max_iter: int = 100

    def __post_init__(self):
        try:
            p = check_exponent(self.p)
            dist = Distance(self.distance)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None
        if p == math.inf:
            raise InvalidConfig("p = inf is not supported for clustering; use 1 or 2")
        if dist not in CLUSTER_DISTANCES:
            raise InvalidConfig(f"distance {dist.value} is not supported for clustering")
        if self.k < 1:
            raise InvalidConfig(f"k must be >= 1, got {self.k}")
        if self.max_iter < 1:
            raise InvalidConfig(f"max_iter must be >= 1, got {self.max_iter}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "distance", dist)
        self.method  # validates the pairing

    @property
    def method(self) -> Method:
        try:
            return Method.for_pair(self.p, self.distance)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None


@dataclass(frozen=True)
class ClusteringResult:
    assignments: tuple
    prototypes: tuple
    criterion_trace: tuple
    iterations: int
    converged: bool
    repair_iterations: tuple = field(default=())
    initial_indices: tuple = field(default=())


def _scales(data, config):
    if not config.normalize:
        return (1.0,) * data.dim
    return dispersion_profile(data, config.method).dispersions


def _cost(x: Hypercube, proto: Hypercube, config, scales) -> float:
    """``D(x, proto)**p`` with optional per-coordinate scaling."""
    dfun = config.distance.func
    total = 0.0
    for j, (u, v) in enumerate(zip(x, proto)):
        d = dfun(u, v)
        s = scales[j]
        if s == 0:
            if d != 0:
                raise ZeroDispersion(f"coordinate {j} has zero dispersion but distance {d}")
            continue
        total += (d / s) ** config.p
    return total


def criterion(data, assignments, prototypes, config: ClusteringConfig, scales=None) -> float:
    data = as_dataset(data)
    if scales is None:
        scales = _scales(data, config)
    return math.fsum(
        _cost(x, prototypes[c], config, scales) for x, c in zip(data, assignments)
    )


def _prototype(data, members, method) -> Hypercube:
    comps = []
    for j in range(data.dim):
        column = IntervalSample(data[i][j] for i in members)
        if method is Method.L2_HAUSDORFF:
            comps.append(center_l2_hausdorff(column, incremental=True).center)
        else:
            comps.append(central_interval(column, method).center)
    return Hypercube(tuple(comps))


def _distinct_first_indices(data):
    seen = {}
    for i, x in enumerate(data):
        seen.setdefault(x, i)
    return list(seen.values())


def initial_indices(data, k, seed) -> list[int]:
    """``k`` indices of pairwise distinct items drawn with a seeded generator."""
    data = as_dataset(data)
    distinct = _distinct_first_indices(data)
    if k > len(distinct):
        raise KTooLarge(f"k={k} exceeds the {len(distinct)} distinct items")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(distinct), size=k, replace=False)
    return [distinct[int(i)] for i in picks]


def _assign(data, prototypes, config, scales):
    out = []
    for x in data:
        costs = [_cost(x, proto, config, scales) for proto in prototypes]
        out.append(min(range(len(costs)), key=costs.__getitem__))
    return out


def cluster(data, config: ClusteringConfig, initial_prototypes=None) -> ClusteringResult:
    """Partition ``data`` into ``config.k`` clusters.

    ``initial_prototypes`` overrides the seeded choice of starting items.
    """
    data = as_dataset(data)
    method = config.method
    scales = _scales(data, config)
    if initial_prototypes is None:
        init = initial_indices(data, config.k, config.seed)
        prototypes = [data[i] for i in init]
    else:
        init = ()
        prototypes = [Hypercube(tuple(p)) if not isinstance(p, Hypercube) else p
                      for p in initial_prototypes]
        if len(prototypes) != config.k:
            raise InvalidConfig(f"{len(prototypes)} initial prototypes for k={config.k}")
        if len(_distinct_first_indices(data)) < config.k:
            raise KTooLarge(f"k={config.k} exceeds the number of distinct items")

    assignments = None
    trace, repairs = [], []
    converged = False
    for it in range(config.max_iter):
        new = _assign(data, prototypes, config, scales)
        if new == assignments:
            converged = True
            break
        repaired = False
        for c in range(config.k):
            if c in new:
                continue
            # reseed the empty cluster with the worst-served item
            sizes = np.bincount(new, minlength=config.k)
            worst, worst_cost = None, -1.0
            for i, x in enumerate(data):
                if sizes[new[i]] < 2:
                    continue
                cost = _cost(x, prototypes[new[i]], config, scales)
                if cost > worst_cost:
                    worst, worst_cost = i, cost
            log.info("iteration %d: cluster %d empty, reseeded with item %d", it + 1, c, worst)
            new[worst] = c
            repaired = True
        assignments = new
        for c in range(config.k):
            members = [i for i, a in enumerate(assignments) if a == c]
            prototypes[c] = _prototype(data, members, method)
        trace.append(criterion(data, assignments, prototypes, config, scales))
        if repaired:
            repairs.append(len(trace) - 1)
    else:
        # max_iter reached; converged only if one more assignment changes nothing
        converged = _assign(data, prototypes, config, scales) == assignments

    return ClusteringResult(
        tuple(assignments), tuple(prototypes), tuple(trace), len(trace), converged,
        tuple(repairs), tuple(init),
    )
