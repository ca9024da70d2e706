"""Exact central interval for the L2 combination of Hausdorff distances.

The objective, written in midpoint/half-length coordinates ``(mu, lam)``::

    F(mu, lam) = sum_i max((a_i - mu + lam)**2, (b_i - mu - lam)**2)

is convex and piecewise quadratic.  Which of the two squares wins for
interval ``i`` depends only on the sign of ``(m_i - mu) * (l_i - lam)``, so
the sorted midpoints and half-lengths cut the plane into rectangles on which
``F`` is a single quadratic.  Each rectangle gives a small box-constrained QP
that is solved in closed form by walking the Kuhn-Tucker cases (interior,
edge, corner).  Scanning every rectangle costs O(n) per rectangle, O(n^3)
overall.

Indices reported in ``I_a`` / ``I_b`` are 0-based positions in the sample.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .closed_form import CentralEstimate, Method, eval_dispersion
from .errors import InfeasibleRectangle, InvalidConfig
from .intervals import INF, Distance, Interval, as_sample

log = logging.getLogger(__name__)

TIE_TOL = 1e-9
AUTO_PARALLEL_N = 150


class ImpossibleCornerCase(RuntimeError):
    """Both inward gradient components were negative at a projected corner."""


@dataclass(frozen=True)
class Breakpoints:
    """Distinct sorted midpoints and half-lengths of a sample.

    Rectangle ``(j, k)`` spans ``m_ext[j] <= mu <= m_ext[j+1]`` and
    ``l_ext[k] <= lam <= l_ext[k+1]`` where ``*_ext`` pads the sorted values
    with ``-inf`` / ``+inf``.
    """

    m_sorted: tuple
    l_sorted: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.m_sorted) + 1, len(self.l_sorted) + 1

    def m_bounds(self, j: int) -> tuple[float, float]:
        lo = self.m_sorted[j - 1] if j > 0 else -INF
        hi = self.m_sorted[j] if j < len(self.m_sorted) else INF
        return lo, hi

    def l_bounds(self, k: int) -> tuple[float, float]:
        lo = self.l_sorted[k - 1] if k > 0 else -INF
        hi = self.l_sorted[k] if k < len(self.l_sorted) else INF
        return lo, hi

    def m_representative(self, j: int) -> float:
        return _representative(self.m_sorted, j)

    def l_representative(self, k: int) -> float:
        return _representative(self.l_sorted, k)


def _representative(values, j):
    # Strictly interior point of the j-th cell; unbounded cells step one
    # data range (plus one) past the finite end.
    pad = values[-1] - values[0] + 1.0
    if j == 0:
        return values[0] - pad
    if j == len(values):
        return values[-1] + pad
    return (values[j - 1] + values[j]) / 2


def breakpoints(sample) -> Breakpoints:
    sample = as_sample(sample)
    return Breakpoints(tuple(sorted(set(sample.mids))), tuple(sorted(set(sample.halves))))


def classify(sample, bp: Breakpoints, j: int, k: int) -> tuple[tuple, tuple]:
    """Split sample indices into those whose lower-bound term is active (I_a)
    and those whose upper-bound term is active (I_b) inside rectangle ``(j, k)``."""
    sample = as_sample(sample)
    mu = bp.m_representative(j)
    lam = bp.l_representative(k)
    ia, ib = [], []
    for i, x in enumerate(sample):
        if (x.mid - mu) * (x.half - lam) <= 0:
            ia.append(i)
        else:
            ib.append(i)
    return tuple(ia), tuple(ib)


@dataclass(frozen=True)
class RectangleSubproblem:
    j: int
    k: int
    m_minus: float
    m_plus: float
    l_minus: float
    l_plus: float
    I_a: tuple
    I_b: tuple
    n_a: int
    n_b: int
    A: float
    B: float
    A2: float
    B2: float

    @classmethod
    def build(cls, sample, bp: Breakpoints, j: int, k: int) -> "RectangleSubproblem":
        sample = as_sample(sample)
        ia, ib = classify(sample, bp, j, k)
        a = [sample[i].lower for i in ia]
        b = [sample[i].upper for i in ib]
        return cls(
            j, k, *bp.m_bounds(j), *bp.l_bounds(k), ia, ib, len(ia), len(ib),
            math.fsum(a), math.fsum(b),
            math.fsum(v * v for v in a), math.fsum(v * v for v in b),
        )


@dataclass(frozen=True)
class RectangleSolution:
    """Minimizer of the rectangle's quadratic over the rectangle.

    ``case`` records which branch produced it (``interior``, ``edge``,
    ``corner``, ``corner-edge`` or ``flat``).  ``segment`` holds the two ends
    of the minimizing set in ``(mu, lam)``; they coincide unless the
    quadratic is flat along a diagonal, in which case ``degenerate_flag`` is
    set and the point returned is the segment midpoint.
    """

    mu_hat: float
    lambda_hat: float
    value: float
    degenerate_flag: bool
    case: str
    segment: tuple

    @property
    def alpha(self) -> float:
        return self.mu_hat - self.lambda_hat

    @property
    def beta(self) -> float:
        return self.mu_hat + self.lambda_hat


def _clamp(x, lo, hi):
    return lo if x < lo else hi if x > hi else x


def _value(n_a, n_b, A, B, A2, B2, alpha, beta):
    v = A2 - 2 * A * alpha + n_a * alpha * alpha + B2 - 2 * B * beta + n_b * beta * beta
    return max(v, 0.0)


def _solve_flat(n_a, n_b, A, B, A2, B2, m_lo, m_hi, l_lo, l_hi):
    if n_a == 0:
        # objective depends on t = mu + lam only
        t = _clamp(B / n_b, m_lo + l_lo, m_hi + l_hi)
        lo, hi = max(m_lo, t - l_hi), min(m_hi, t - l_lo)
        other = lambda mu: t - mu  # noqa: E731
    else:
        # objective depends on s = mu - lam only
        s = _clamp(A / n_a, m_lo - l_hi, m_hi - l_lo)
        lo, hi = max(m_lo, s + l_lo), min(m_hi, s + l_hi)
        other = lambda mu: mu - s  # noqa: E731

    def on_line(mu):
        # rounding in t - mu can step an ulp outside the rectangle
        return mu, _clamp(other(mu), l_lo, l_hi)

    if math.isinf(lo):
        lo = hi
    if math.isinf(hi):
        hi = lo
    if lo > hi:  # touching at a corner, off by rounding
        lo = hi = _clamp(lo, m_lo, m_hi)
    mid = (lo + hi) / 2
    mu, lam = on_line(mid)
    value = _value(n_a, n_b, A, B, A2, B2, mu - lam, mu + lam)
    return RectangleSolution(mu, lam, value, hi > lo, "flat", (on_line(lo), on_line(hi)))


def _solve(n_a, n_b, A, B, A2, B2, m_lo, m_hi, l_lo, l_hi) -> RectangleSolution:
    if m_lo > m_hi or l_lo > l_hi:
        raise InfeasibleRectangle(f"empty rectangle [{m_lo}, {m_hi}] x [{l_lo}, {l_hi}]")
    if n_a == 0 or n_b == 0:
        return _solve_flat(n_a, n_b, A, B, A2, B2, m_lo, m_hi, l_lo, l_hi)

    n = n_a + n_b
    d = n_a - n_b

    def mu_on_row(lam):
        # zero of the mu-gradient with lam held fixed
        return _clamp((A + B + d * lam) / n, m_lo, m_hi)

    def lam_on_column(mu):
        # zero of the lam-gradient with mu held fixed
        return _clamp((B - A + d * mu) / n, l_lo, l_hi)

    alpha, beta = A / n_a, B / n_b
    mu_c, lam_c = (alpha + beta) / 2, (beta - alpha) / 2
    mu_p, lam_p = _clamp(mu_c, m_lo, m_hi), _clamp(lam_c, l_lo, l_hi)
    mu_out, lam_out = mu_p != mu_c, lam_p != lam_c

    if not mu_out and not lam_out:
        mu, lam, case = mu_c, lam_c, "interior"
    elif mu_out and not lam_out:
        mu, lam, case = mu_p, lam_on_column(mu_p), "edge"
    elif lam_out and not mu_out:
        mu, lam, case = mu_on_row(lam_p), lam_p, "edge"
    else:
        g_mu = 2 * (-A - B + n * mu_p - d * lam_p)
        g_lam = 2 * (A - B - d * mu_p + n * lam_p)
        # orient so that a negative component means "decreasing into Q"
        g_mu *= 1 if mu_p == m_lo else -1
        g_lam *= 1 if lam_p == l_lo else -1
        if g_mu < 0 and g_lam < 0:
            raise ImpossibleCornerCase(
                f"g=({g_mu}, {g_lam}) at corner ({mu_p}, {lam_p}) of "
                f"[{m_lo}, {m_hi}] x [{l_lo}, {l_hi}]"
            )
        if g_mu < 0:
            mu, lam, case = mu_on_row(lam_p), lam_p, "corner-edge"
        elif g_lam < 0:
            mu, lam, case = mu_p, lam_on_column(mu_p), "corner-edge"
        else:
            mu, lam, case = mu_p, lam_p, "corner"
    value = _value(n_a, n_b, A, B, A2, B2, mu - lam, mu + lam)
    return RectangleSolution(mu, lam, value, False, case, ((mu, lam), (mu, lam)))


def solve_rectangle(rp: RectangleSubproblem) -> RectangleSolution:
    return _solve(
        rp.n_a, rp.n_b, rp.A, rp.B, rp.A2, rp.B2,
        rp.m_minus, rp.m_plus, rp.l_minus, rp.l_plus,
    )


# -- full scan ---------------------------------------------------------------


def _scan_plain(sample, bp, js, clip):
    out = []
    n_k = bp.shape[1]
    for j in js:
        for k in range(n_k):
            rp = RectangleSubproblem.build(sample, bp, j, k)
            l_lo, l_hi = rp.l_minus, rp.l_plus
            if clip:
                if l_hi < 0:
                    continue
                l_lo = max(l_lo, 0.0)
            sol = _solve(rp.n_a, rp.n_b, rp.A, rp.B, rp.A2, rp.B2,
                         rp.m_minus, rp.m_plus, l_lo, l_hi)
            out.append((sol.value, j, k, sol))
    return out


def _scan_incremental(sample, bp, js, clip):
    # For a fixed mu-cell, moving lam up past one half-length breakpoint only
    # flips the intervals sitting on that breakpoint, so the sums can be
    # updated in place instead of re-classifying.
    out = []
    n_k = bp.shape[1]
    l_index = {v: i for i, v in enumerate(bp.l_sorted)}
    groups = [[] for _ in bp.l_sorted]
    for x in sample:
        groups[l_index[x.half]].append(x)
    for j in js:
        rep = bp.m_representative(j)
        n_a = n_b = 0
        A = B = A2 = B2 = 0.0
        # k = 0: every l_i lies above lam, so i is in I_a iff m_i < rep
        for x in sample:
            if x.mid < rep:
                n_a += 1
                A += x.lower
                A2 += x.lower * x.lower
            else:
                n_b += 1
                B += x.upper
                B2 += x.upper * x.upper
        m_lo, m_hi = bp.m_bounds(j)
        for k in range(n_k):
            if k > 0:
                for x in groups[k - 1]:
                    a, b = x.lower, x.upper
                    if x.mid < rep:
                        n_a -= 1
                        A -= a
                        A2 -= a * a
                        n_b += 1
                        B += b
                        B2 += b * b
                    else:
                        n_b -= 1
                        B -= b
                        B2 -= b * b
                        n_a += 1
                        A += a
                        A2 += a * a
                if n_a == 0:
                    A = A2 = 0.0
                if n_b == 0:
                    B = B2 = 0.0
            l_lo, l_hi = bp.l_bounds(k)
            if clip:
                if l_hi < 0:
                    continue
                l_lo = max(l_lo, 0.0)
            sol = _solve(n_a, n_b, A, B, A2, B2, m_lo, m_hi, l_lo, l_hi)
            out.append((sol.value, j, k, sol))
    return out


def _scan_chunk(args):
    sample, bp, js, clip, incremental = args
    scan = _scan_incremental if incremental else _scan_plain
    results = scan(sample, bp, js, clip)
    return _near_ties(results)


def _tol(best):
    return TIE_TOL * max(1.0, abs(best))


def _near_ties(results):
    if not results:
        return []
    best = min(r[0] for r in results)
    return [r for r in results if r[0] <= best + _tol(best)]


def resolve_workers(workers=None, n=0) -> int:
    """Worker count for a scan over a sample of size ``n``.

    ``None`` reads ``INTERVAL_CENTERS_THREADS``; ``0`` (or an unset variable)
    picks automatically: one process per CPU for large samples, else one.
    """
    if workers is None:
        env = os.environ.get("INTERVAL_CENTERS_THREADS", "").strip()
        try:
            workers = int(env) if env else 0
        except ValueError:
            raise InvalidConfig(f"INTERVAL_CENTERS_THREADS={env!r} is not an integer") from None
    if workers <= 0:
        workers = (os.cpu_count() or 1) if n >= AUTO_PARALLEL_N else 1
    return workers


def scan_rectangles(sample, *, incremental=False, clip_nonnegative=False, workers=1):
    """Solve every rectangle; returns the near-optimal ``(value, j, k, solution)``
    tuples in scan order (by ``j`` then ``k``)."""
    sample = as_sample(sample)
    bp = breakpoints(sample)
    n_j = bp.shape[0]
    workers = max(1, min(resolve_workers(workers, len(sample)), n_j))
    if workers == 1:
        return _scan_chunk((sample, bp, range(n_j), clip_nonnegative, incremental))
    chunks = [range(w, n_j, workers) for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            _scan_chunk, [(sample, bp, c, clip_nonnegative, incremental) for c in chunks]
        )
        merged = [r for part in parts for r in part]
    merged.sort(key=lambda r: (r[1], r[2]))
    return _near_ties(merged)


def _objective(sample, mu, lam):
    return math.fsum(
        max((x.lower - mu + lam) ** 2, (x.upper - mu - lam) ** 2) for x in sample
    )


def _canonical_point(sample, ties):
    """Midpoint of the minimizing set.

    The minimizers of a convex function form a convex set; here it is a point
    or a segment, the union of the tied rectangle solutions.  Its ends are
    the farthest pair among all tied candidate points.
    """
    best = min(r[0] for r in ties)
    first = min(ties, key=lambda r: (r[0], r[1], r[2]))[3]
    pts = sorted({p for r in ties for p in r[3].segment})
    if len(pts) == 1:
        return first.mu_hat, first.lambda_hat
    far, p0, p1 = -1.0, None, None
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            dd = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
            if dd > far:
                far, p0, p1 = dd, p, q
    mu, lam = (p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2
    if _objective(sample, mu, lam) <= best + _tol(best):
        return mu, lam
    return first.mu_hat, first.lambda_hat


def center_l2_hausdorff(sample, *, incremental=False, workers=1) -> CentralEstimate:
    """Central interval minimizing ``sum_i hausdorff(x_i, c)**2``.

    Every rectangle of the midpoint/half-length grid is solved exactly and
    the best is kept.  When the minimizer is not unique (it is then a
    segment), the segment midpoint is returned.  ``incremental`` switches to
    an O(n^2) sweep that updates the active-set sums between neighbouring
    rectangles instead of re-classifying from scratch.
    """
    sample = as_sample(sample)
    ties = scan_rectangles(sample, incremental=incremental, workers=workers)
    mu, lam = _canonical_point(sample, ties)
    if lam < 0:
        log.warning("scan optimum has negative half-length %r; rescanning with lam >= 0", lam)
        ties = scan_rectangles(
            sample, incremental=incremental, workers=workers, clip_nonnegative=True
        )
        mu, lam = _canonical_point(sample, ties)
        lam = max(lam, 0.0)
    center = Interval.from_midlen(mu, lam)
    disp = eval_dispersion(sample, center, 2, Distance.HAUSDORFF)
    return CentralEstimate(center, disp, Method.L2_HAUSDORFF, 2)
