"""Brute-force minimizers used to check the exact solvers.

Nothing here reuses solver code: objectives are evaluated from the raw
bounds with numpy, and minimization is plain grid search followed by nested
golden-section refinement.  All in-scope objectives are convex in
``(mid, half)``, and partial minimization of a convex function is convex, so
the nested 1-D searches converge to the global minimum over the box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .intervals import Interval, as_sample, check_exponent

GRID_POINTS = 41
GRID_LEVELS = 3
ZOOM = 10.0
GOLDEN_ITERS = 60

_INVPHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class OracleResult:
    center: Interval | None
    value: float
    resolution: float
    mu: float = math.nan
    lam: float = math.nan
    history: tuple = field(default=(), compare=False)


def _terms(a, b, mu, lam, dist):
    """Per-interval distances to the candidates ``(mu, lam)``; broadcasting."""
    alpha = mu - lam
    beta = mu + lam
    da = np.abs(a - alpha)
    db = np.abs(b - beta)
    if dist in ("hausdorff", "linf-bounds"):
        return np.maximum(da, db)
    if dist == "l1-bounds":
        return da + db
    if dist == "l2-bounds":
        return np.sqrt(da * da + db * db)
    dm = np.abs((a + b) / 2 - mu)
    dl = np.abs((b - a) / 2 - lam)
    if dist == "l1-midlen":
        return dm + dl
    if dist == "l2-midlen":
        return np.sqrt(dm * dm + dl * dl)
    if dist == "linf-midlen":
        return np.maximum(dm, dl)
    raise ValueError(f"unknown distance {dist!r}")


def _objective(a, b, p, dist):
    """Return f(mu, lam) -> sum d**p (or max d) over candidate arrays."""
    a = np.asarray(a, dtype=float)[:, None]
    b = np.asarray(b, dtype=float)[:, None]

    def f(mu, lam):
        mu = np.atleast_1d(np.asarray(mu, dtype=float))[None, :]
        lam = np.atleast_1d(np.asarray(lam, dtype=float))[None, :]
        d = _terms(a, b, mu, lam, dist)
        if p == math.inf:
            return d.max(axis=0)
        return (d**p).sum(axis=0)

    return f


def _finalize(raw, p):
    if p == math.inf or p == 1:
        return float(raw)
    return math.sqrt(max(float(raw), 0.0))


def _golden(g, lo, hi, iters=GOLDEN_ITERS):
    """Minimize a unimodal scalar function on [lo, hi]; returns (x, g(x))."""
    if hi - lo <= 0:
        return lo, g(lo)
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = g(x1), g(x2)
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = g(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = g(x2)
    cands = [(f1, x1), (f2, x2), (g(lo), lo), (g(hi), hi)]
    fx, x = min(cands)
    return x, fx


def _nested_golden(f, mu_lo, mu_hi, lam_lo, lam_hi, iters=GOLDEN_ITERS):
    inner_best = {}

    def phi(mu):
        lam, v = _golden(lambda t: float(f(mu, t)[0]), lam_lo, lam_hi, iters)
        inner_best[mu] = lam
        return v

    mu, v = _golden(phi, mu_lo, mu_hi, iters)
    return mu, inner_best[mu], v


def _grid_search(f, mu_lo, mu_hi, lam_lo, lam_hi, levels=GRID_LEVELS, points=GRID_POINTS):
    """Hierarchical zooming grid; returns (mu, lam, value, history)."""
    best = None
    history = []
    lo_m, hi_m, lo_l, hi_l = mu_lo, mu_hi, lam_lo, lam_hi
    for _ in range(levels):
        mus = np.linspace(lo_m, hi_m, points)
        lams = np.linspace(lo_l, hi_l, points)
        M, L = np.meshgrid(mus, lams, indexing="ij")
        vals = f(M.ravel(), L.ravel())
        i = int(np.argmin(vals))
        cand = (float(vals[i]), float(M.ravel()[i]), float(L.ravel()[i]))
        if best is None or cand[0] < best[0]:
            best = cand
        history.append(best[0])
        half_m = (hi_m - lo_m) / (2 * ZOOM)
        half_l = (hi_l - lo_l) / (2 * ZOOM)
        lo_m, hi_m = max(mu_lo, best[1] - half_m), min(mu_hi, best[1] + half_m)
        lo_l, hi_l = max(lam_lo, best[2] - half_l), min(lam_hi, best[2] + half_l)
    step = max(hi_m - lo_m, hi_l - lo_l) * ZOOM / (points - 1)
    return best[1], best[2], best[0], history, step


def _data_box(a, b, expand):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m = (a + b) / 2
    l = (b - a) / 2
    width = float(b.max() - a.min())
    if width == 0:
        width = 1.0
    r = expand * width
    return float(m.min() - r), float(m.max() + r), float(l.min() - r), float(l.max() + r)


def grid_minimize(sample, p=2, dist="hausdorff") -> OracleResult:
    """Minimize the p-aggregation of ``dist`` to the sample over valid intervals."""
    sample = as_sample(sample)
    p = check_exponent(p)
    dist = getattr(dist, "value", dist)
    a, b = sample.lowers, sample.uppers
    f = _objective(a, b, p, dist)
    mu_lo, mu_hi, lam_lo, lam_hi = _data_box(a, b, 1.0)
    lam_lo = max(lam_lo, 0.0)

    gm, gl, gv, history, _ = _grid_search(f, mu_lo, mu_hi, lam_lo, lam_hi)
    nm, nl, nv = _nested_golden(f, mu_lo, mu_hi, lam_lo, lam_hi)
    if nv < gv:
        gm, gl, gv = nm, nl, nv
    history.append(gv)
    width = max(mu_hi - mu_lo, lam_hi - lam_lo)
    resolution = width * _INVPHI**GOLDEN_ITERS
    return OracleResult(
        Interval.from_midlen(gm, gl), _finalize(gv, p), resolution, gm, gl, tuple(history)
    )


def _distinct_sorted(values):
    return sorted(set(values))


def rectangle_bounds(sample, j, k):
    """Bounds ``(m_minus, m_plus, l_minus, l_plus)`` of rectangle ``(j, k)``.

    Independent re-derivation of the breakpoint grid (deduplicated sorted
    midpoints and half-lengths with infinite sentinels).
    """
    sample = as_sample(sample)
    ms = [-math.inf] + _distinct_sorted(x.mid for x in sample) + [math.inf]
    ls = [-math.inf] + _distinct_sorted(x.half for x in sample) + [math.inf]
    if not (0 <= j < len(ms) - 1 and 0 <= k < len(ls) - 1):
        raise IndexError(f"rectangle ({j}, {k}) out of range")
    return ms[j], ms[j + 1], ls[k], ls[k + 1]


def rectangle_grid_minimize(sample, j, k, resolution=None) -> OracleResult:
    """Minimize the squared L2-Hausdorff objective over rectangle ``(j, k)``.

    Inside a rectangle the piecewise objective coincides with the full
    objective, so the full objective is minimized there directly.  Unbounded
    sides are clipped to the data box expanded by ten data widths.  The
    returned ``value`` is the squared objective.
    """
    sample = as_sample(sample)
    a, b = sample.lowers, sample.uppers
    f = _objective(a, b, 2, "hausdorff")
    box = _data_box(a, b, 10.0)
    m_lo, m_hi, l_lo, l_hi = rectangle_bounds(sample, j, k)
    m_lo = max(m_lo, box[0])
    m_hi = min(m_hi, box[1])
    l_lo = max(l_lo, box[2])
    l_hi = min(l_hi, box[3])

    points = GRID_POINTS
    if resolution:
        span = max(m_hi - m_lo, l_hi - l_lo)
        points = int(min(max(span / resolution, 2), 400)) + 1
    gm, gl, gv, history, step = _grid_search(f, m_lo, m_hi, l_lo, l_hi, levels=1, points=points)
    nm, nl, nv = _nested_golden(f, m_lo, m_hi, l_lo, l_hi)
    if nv < gv:
        gm, gl, gv = nm, nl, nv
    history.append(gv)
    # rectangles extend below half-length zero, where no interval exists
    center = Interval.from_midlen(gm, gl) if gl >= 0 else None
    return OracleResult(center, float(gv), step, gm, gl, tuple(history))
