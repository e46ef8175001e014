"""Structural measurements of point sets and line arrangements.

Everything here is exact: counts are integers and distances are kept squared
so the spread is a rational number.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt, lcm

import numpy as np

from .geometry import (
    Coord,
    Incidences,
    LineKey,
    Point,
    PointSet,
    as_coord,
    as_line_set,
    as_point_set,
    as_rational,
    canonical_line,
    incidences,
    squared_distance,
)

# Squared differences of integers bounded by this fit int64 with room to add.
_DIST_SAFE = 1 << 29


@dataclass(frozen=True)
class LineProfile:
    """Point count of every line determined by ``n`` points."""

    entries: dict[LineKey, int]
    n: int

    def __len__(self) -> int:
        return len(self.entries)

    def pair_count(self) -> int:
        return sum(comb(t, 2) for t in self.entries.values())

    def heavy(self) -> dict[LineKey, int]:
        return {key: t for key, t in self.entries.items() if t >= 3}


@dataclass(frozen=True)
class DensityReport:
    min_sq: Coord
    max_sq: Coord
    spread_sq: Coord


@dataclass(frozen=True)
class CoverCertificate:
    """A concrete line cover; ``gains[k]`` points were first covered by line ``k``."""

    lines: tuple[LineKey, ...]
    size: int
    covered: bool
    gains: tuple[int, ...]

    @property
    def opt_bound(self) -> int:
        """Upper bound on any general-position subset: two points per line."""
        return sum(min(2, g) for g in self.gains)


def line_profile(points) -> LineProfile:
    pts = as_point_set(points)
    if len(pts) < 2:
        raise ValueError("a line profile needs at least two points")
    inc = incidences(pts)
    return LineProfile(dict(zip(inc.keys(), inc.sizes.tolist())), len(pts))


def _triples(inc: Incidences) -> int:
    t = inc.sizes[inc.sizes >= 3].astype(object)
    return int(sum(t * (t - 1) * (t - 2) // 6))


def collinear_triples(points) -> int:
    """Number of unordered collinear triples, summed line by line."""
    pts = as_point_set(points)
    if len(pts) < 3:
        return 0
    return _triples(incidences(pts))


def max_collinear(points) -> int:
    """Largest number of points on a line determined by the set."""
    pts = as_point_set(points)
    if len(pts) < 2:
        raise ValueError("max_collinear needs at least two points")
    return int(incidences(pts).sizes.max())


def _integer_frame(pts: PointSet):
    """Scale to a common denominator: returns (int array or None, scale)."""
    w = lcm(*(p.x.denominator * p.y.denominator for p in pts))
    xy = [(int(p.x * w), int(p.y * w)) for p in pts]
    if max(max(abs(x), abs(y)) for x, y in xy) > _DIST_SAFE:
        return None, w
    return np.array(xy, dtype=np.int64), w


def density_report(points) -> DensityReport:
    """Minimum and maximum squared pairwise distances and their ratio."""
    pts = as_point_set(points)
    if len(pts) < 2:
        raise ValueError("density needs at least two points")
    arr, w = _integer_frame(pts)
    if arr is not None:
        # Row blocks against the remaining columns; points are distinct, so
        # zero only appears on the diagonal. Spans below 2**15 fit int32.
        arr = arr - arr.min(axis=0)
        dtype = np.int32 if arr.max() < 1 << 15 else np.int64
        x, y = arr[:, 0].astype(dtype), arr[:, 1].astype(dtype)
        lo_i, hi_i = None, 0
        for s in range(0, len(arr), 256):
            dx = x[s:s + 256, None] - x[None, s:]
            dy = y[s:s + 256, None] - y[None, s:]
            sq = dx * dx + dy * dy
            hi_i = max(hi_i, int(sq.max()))
            sq[sq == 0] = np.iinfo(dtype).max
            block_lo = int(sq.min())
            lo_i = block_lo if lo_i is None else min(lo_i, block_lo)
        lo = as_coord(Fraction(lo_i, w * w))
        hi = as_coord(Fraction(hi_i, w * w))
    else:
        seq = pts.points
        sq = [squared_distance(p, q) for k, p in enumerate(seq) for q in seq[k + 1:]]
        lo, hi = min(sq), max(sq)
    return DensityReport(lo, hi, as_coord(Fraction(hi) / lo))


def is_alpha_dense(points, alpha) -> bool:
    """``spread <= alpha * sqrt(n)``, decided as ``spread**2 <= alpha**2 * n``."""
    alpha = as_rational(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    pts = as_point_set(points)
    return density_report(pts).spread_sq <= alpha * alpha * len(pts)


def _single_point_line(p: Point) -> LineKey:
    y = Fraction(p.y)
    return canonical_line(0, y.denominator, -y.numerator)


def greedy_line_cover(points) -> CoverCertificate:
    """Cover by repeatedly taking the determined line with most uncovered points.

    Ties go to the lexicographically smallest key. Points left isolated once
    no line covers two of them get a horizontal line each. If the plain row
    or column cover is strictly smaller than the greedy one, that is
    returned instead.
    """
    pts = as_point_set(points)
    return _greedy_cover(pts, incidences(pts))


def _greedy_cover(pts: PointSet, inc: Incidences) -> CoverCertificate:
    uncovered = np.ones(len(pts), dtype=bool)
    chosen: list[LineKey] = []
    gains: list[int] = []

    def take(k: int, gain: int) -> None:
        chosen.append(inc.key(k))
        gains.append(gain)
        uncovered[inc.members(k)] = False

    # Lines with three or more uncovered points, via a lazy max-heap: stored
    # counts only ever overestimate, so a popped entry whose count is still
    # current beats everything left.
    heap = [(-int(inc.sizes[k]), tuple(inc.coeffs[k].tolist()), int(k)) for k in inc.heavy()]
    heapq.heapify(heap)
    while heap:
        neg, key, k = heapq.heappop(heap)
        gain = int(uncovered[inc.members(k)].sum())
        if gain == -neg:
            take(k, gain)
        elif gain >= 3:
            heapq.heappush(heap, (-gain, key, k))

    # Now every line gains at most two. Lines are stored in key order and
    # gains only shrink, so one ascending pass applies the same rule.
    if len(inc):
        counts = np.add.reduceat(uncovered[inc.indices].astype(np.int64), inc.indptr[:-1])
        for k in np.flatnonzero(counts == 2):
            members = inc.members(k)
            if int(uncovered[members].sum()) == 2:
                take(int(k), 2)
    for idx in np.flatnonzero(uncovered):
        chosen.append(_single_point_line(pts[int(idx)]))
        gains.append(1)

    best = (tuple(chosen), tuple(gains))
    # Rows and columns always cover; keep whichever certificate is smallest.
    for axis in (_axis_cover(pts, horizontal=True), _axis_cover(pts, horizontal=False)):
        if len(axis[0]) < len(best[0]):
            best = axis
    lines, gains = best
    covered = all(any(line.contains(p) for line in lines) for p in pts)
    return CoverCertificate(lines, len(lines), covered, gains)


def _axis_cover(pts: PointSet, horizontal: bool):
    counts: dict[Fraction, int] = {}
    for p in pts:
        v = Fraction(p.y if horizontal else p.x)
        counts[v] = counts.get(v, 0) + 1
    lines = tuple(canonical_line(0, v.denominator, -v.numerator) if horizontal
                  else canonical_line(v.denominator, 0, -v.numerator) for v in sorted(counts))
    return lines, tuple(counts[v] for v in sorted(counts))


def arrangement_vertices(lines) -> PointSet:
    """All pairwise intersection points, deduplicated and sorted."""
    ls = as_line_set(lines)
    verts = set()
    for s, (a1, b1, c1) in enumerate(ls):
        for a2, b2, c2 in ls[s + 1:]:
            det = a1 * b2 - a2 * b1
            if det:
                verts.add(Point(Fraction(b1 * c2 - b2 * c1, det),
                                Fraction(a2 * c1 - a1 * c2, det)))
    return PointSet(sorted(verts))


def is_generic(lines, c=Fraction(1, 10)) -> bool:
    """True iff the arrangement has at least ``c * n**2`` vertices."""
    ls = as_line_set(lines)
    c = as_rational(c)
    if len(ls) < 2:
        raise ValueError("genericity needs at least two lines")
    if c <= 0:
        raise ValueError("genericity constant must be positive")
    return len(arrangement_vertices(ls)) >= c * len(ls) ** 2


def alpha_upper(points, denominator: int = 100) -> Fraction:
    """Smallest ``a / denominator`` for which the set is alpha-dense."""
    pts = as_point_set(points)
    target = Fraction(density_report(pts).spread_sq) * denominator ** 2 / len(pts)
    a = isqrt(-(-target.numerator // target.denominator))
    while a * a < target:
        a += 1
    return Fraction(a, denominator)
