"""Exact planar predicates and canonical point and line representations.

Coordinates are exact rationals. An integral value is always stored as a
plain ``int`` and anything else as a reduced :class:`fractions.Fraction`, so
equality, hashing and ordering of points never depend on how a value was
produced. Nothing in this module touches floating point.

Lines are identified by :class:`LineKey`, the integer triple ``(a, b, c)`` of
``a*x + b*y + c = 0`` reduced to coprime coefficients with the first nonzero
coefficient positive. Two point pairs lie on the same line exactly when they
produce the same key, which turns every incidence question into hashing.
"""
from __future__ import annotations

import numbers
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Union

import numpy as np

from .errors import DuplicatePointError, IdenticalPointsError

Coord = Union[int, Fraction]

# Homogeneous coordinates bounded by this keep every 2x2 minor of a pair
# (|.| <= 2 * 2**60) inside int64.
_INT64_SAFE = 1 << 30


def as_coord(value) -> Coord:
    """Return the canonical exact form of ``value`` (int if integral)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Rational):
        return as_coord(Fraction(int(value.numerator), int(value.denominator)))
    if isinstance(value, str):
        return as_coord(Fraction(value))
    raise TypeError(f"{type(value).__name__} is not an exact coordinate type")


class _XY(NamedTuple):
    x: Coord
    y: Coord


class Point(_XY):
    """A planar point with exact rational coordinates.

    Points compare lexicographically on ``(x, y)``, which fixes every
    deterministic tie-break in the package.
    """

    __slots__ = ()

    def __new__(cls, x, y):
        return super().__new__(cls, as_coord(x), as_coord(y))

    @property
    def is_integral(self) -> bool:
        return type(self.x) is int and type(self.y) is int

    def translate(self, dx, dy) -> "Point":
        return Point(self.x + dx, self.y + dy)

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    __str__ = __repr__


class LineKey(NamedTuple):
    """Canonical integer coefficients of the line ``a*x + b*y + c = 0``."""

    a: int
    b: int
    c: int

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y + self.c == 0


LineSet = tuple  # tuple[LineKey, ...]


def as_rational(value) -> Fraction:
    """Exact rational from an int, Fraction, float or ``"a/b"`` string."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    return Fraction(value)


def canonical_line(a: int, b: int, c: int) -> LineKey:
    """Reduce ``(a, b, c)`` to its canonical :class:`LineKey`."""
    a, b, c = int(a), int(b), int(c)
    if a == 0 and b == 0:
        raise ValueError("(a, b) = (0, 0) does not describe a line")
    g = gcd(a, b, c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return LineKey(a, b, c)


def as_line_set(lines) -> tuple[LineKey, ...]:
    """Canonicalize ``lines`` and reject repeats."""
    out = tuple(canonical_line(*line) for line in lines)
    if len(set(out)) != len(out):
        raise ValueError("line set contains the same line twice")
    return out


def homogeneous(p: Point) -> tuple[int, int, int]:
    """Integer triple ``(X, Y, W)`` with ``W > 0`` and ``p = (X/W, Y/W)``."""
    x, y = p
    dx, dy = x.denominator, y.denominator
    if dx == 1 and dy == 1:
        return int(x), int(y), 1
    w = dx * dy // gcd(dx, dy)
    return x.numerator * (w // dx), y.numerator * (w // dy), w


def _raw_line(h1, h2) -> tuple[int, int, int]:
    x1, y1, w1 = h1
    x2, y2, w2 = h2
    return y1 * w2 - w1 * y2, w1 * x2 - x1 * w2, x1 * y2 - y1 * x2


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product ``(q - p) x (r - p)``: +1 for a left turn."""
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (cross > 0) - (cross < 0)


def collinear(p: Point, q: Point, r: Point) -> bool:
    return orientation(p, q, r) == 0


def line_through(p: Point, q: Point) -> LineKey:
    """Canonical key of the line through two distinct points."""
    p, q = Point(*p), Point(*q)
    if p == q:
        raise IdenticalPointsError(f"{p} and {q} coincide")
    return canonical_line(*_raw_line(homogeneous(p), homogeneous(q)))


def squared_distance(p: Point, q: Point) -> Coord:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return as_coord(dx * dx + dy * dy)


class PointSet:
    """An ordered, duplicate-free sequence of :class:`Point`."""

    __slots__ = ("_points", "_index")

    def __init__(self, points: Iterable = ()):
        pts = tuple(p if type(p) is Point else Point(*p) for p in points)
        index = {p: i for i, p in enumerate(pts)}
        if len(index) != len(pts):
            seen = set()
            dup = next(p for p in pts if p in seen or seen.add(p))
            raise DuplicatePointError(f"duplicate point {dup}")
        self._points = pts
        self._index = index

    @classmethod
    def from_unique(cls, points: Iterable) -> "PointSet":
        """Build a set from ``points``, dropping repeats (first occurrence wins)."""
        return cls(dict.fromkeys(Point(*p) for p in points))

    @property
    def n(self) -> int:
        return len(self._points)

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    @property
    def is_integral(self) -> bool:
        return all(p.is_integral for p in self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return PointSet(self._points[item])
        return self._points[item]

    def __contains__(self, p) -> bool:
        try:
            return Point(*p) in self._index
        except (TypeError, ValueError):
            return False

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self._points == other._points
        return NotImplemented

    def __hash__(self):
        return hash(self._points)

    def __repr__(self):
        body = ", ".join(f"({p.x}, {p.y})" for p in self._points[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"PointSet(n={len(self)}: {body}{more})"

    def index(self, p) -> int:
        return self._index[Point(*p)]

    def take(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(self._points[int(i)] for i in indices)

    def sorted(self) -> "PointSet":
        return PointSet(sorted(self._points))

    def translate(self, dx, dy) -> "PointSet":
        return PointSet(p.translate(dx, dy) for p in self._points)

    def issubset(self, other: "PointSet") -> bool:
        return all(p in other._index for p in self._points)


def as_point_set(points) -> PointSet:
    return points if isinstance(points, PointSet) else PointSet(points)


class Incidences:
    """Every line determined by a point set, with its member points.

    Lines are sorted by canonical key. Memberships use a CSR layout:
    ``indices[indptr[k]:indptr[k + 1]]`` are the ascending point indices on
    line ``k`` and ``sizes[k]`` their count (always at least 2).
    """

    def __init__(self, coeffs: np.ndarray, indptr: np.ndarray, indices: np.ndarray):
        self.coeffs = coeffs
        self.indptr = indptr
        self.indices = indices
        self.sizes = np.diff(indptr)

    def __len__(self) -> int:
        return len(self.sizes)

    def key(self, k: int) -> LineKey:
        a, b, c = self.coeffs[k]
        return LineKey(int(a), int(b), int(c))

    def keys(self) -> list[LineKey]:
        return [LineKey(*row) for row in self.coeffs.tolist()]

    def members(self, k: int) -> np.ndarray:
        return self.indices[self.indptr[k]:self.indptr[k + 1]]

    def heavy(self) -> np.ndarray:
        """Indices of lines carrying at least three points."""
        return np.flatnonzero(self.sizes >= 3)


def _empty_incidences() -> Incidences:
    return Incidences(np.zeros((0, 3), dtype=np.int64),
                      np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int64))


def _incidences_numpy(hom: np.ndarray) -> Incidences:
    n = len(hom)
    i, j = np.triu_indices(n, 1)
    x1, y1, w1 = hom[i].T
    x2, y2, w2 = hom[j].T
    a = y1 * w2 - w1 * y2
    b = w1 * x2 - x1 * w2
    c = x1 * y2 - y1 * x2
    g = np.gcd(np.gcd(a, b), c)
    sign = np.where(a != 0, np.sign(a), np.sign(b))
    a = a // g * sign
    b = b // g * sign
    c = c // g * sign
    del x1, y1, w1, x2, y2, w2, g, sign

    order = np.lexsort((j, i, c, b, a))
    a, b, c, i, j = a[order], b[order], c[order], i[order], j[order]
    new = np.ones(len(a), dtype=bool)
    new[1:] = (a[1:] != a[:-1]) | (b[1:] != b[:-1]) | (c[1:] != c[:-1])
    starts = np.flatnonzero(new)
    group = np.cumsum(new) - 1
    # Within a group pairs are sorted by (i, j); the first i is the line's
    # smallest member and its partners are the remaining members.
    first = i[starts]
    anchored = i == first[group]
    partner_group = group[anchored]
    partners = j[anchored]

    counts = 1 + np.bincount(partner_group, minlength=len(starts))
    indptr = np.zeros(len(starts) + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.empty(indptr[-1], dtype=np.int64)
    indices[indptr[:-1]] = first
    rank = np.arange(len(partner_group)) - np.searchsorted(partner_group, partner_group)
    indices[indptr[partner_group] + 1 + rank] = partners
    coeffs = np.stack([a[starts], b[starts], c[starts]], axis=1)
    return Incidences(coeffs, indptr, indices)


def _incidences_python(hom: list[tuple[int, int, int]]) -> Incidences:
    lines: dict[LineKey, set[int]] = {}
    n = len(hom)
    for s in range(n):
        hs = hom[s]
        for t in range(s + 1, n):
            key = canonical_line(*_raw_line(hs, hom[t]))
            members = lines.get(key)
            if members is None:
                lines[key] = {s, t}
            else:
                members.add(t)
    keys = sorted(lines)
    coeffs = np.empty((len(keys), 3), dtype=object)
    for k, key in enumerate(keys):
        coeffs[k] = key
    sizes = [len(lines[key]) for key in keys]
    indptr = np.zeros(len(keys) + 1, dtype=np.int64)
    np.cumsum(sizes, out=indptr[1:])
    indices = np.fromiter((m for key in keys for m in sorted(lines[key])),
                          dtype=np.int64, count=int(indptr[-1]))
    return Incidences(coeffs, indptr, indices)


def incidences(points) -> Incidences:
    """Group all point pairs by their line.

    Uses vectorized int64 arithmetic when the homogeneous coordinates are
    small enough to rule out overflow, and exact Python integers otherwise.
    """
    pts = as_point_set(points)
    if len(pts) < 2:
        return _empty_incidences()
    hom = [homogeneous(p) for p in pts]
    if max(abs(v) for h in hom for v in h) <= _INT64_SAFE:
        return _incidences_numpy(np.array(hom, dtype=np.int64))
    return _incidences_python(hom)


def is_general_position(points) -> bool:
    """True iff no line contains three or more of the points."""
    pts = as_point_set(points)
    if len(pts) <= 2:
        return True
    return not bool((incidences(pts).sizes > 2).any())
