"""Seeded constructions of the instance families used throughout the package.

All randomness comes from ``numpy.random.default_rng(seed)``, so a seed fixes
the output bit for bit.
"""
from __future__ import annotations

from math import ceil, isqrt

import numpy as np

from .errors import ExhaustedSpaceError, InfeasibleDensityError, InvalidPrimeError
from .geometry import LineKey, PointSet, as_rational, canonical_line
from .primes import is_prime


def grid(m: int) -> PointSet:
    """The ``m x m`` lattice ``{0, ..., m-1}**2`` in lexicographic order."""
    if m < 1:
        raise ValueError("grid side must be positive")
    return PointSet((x, y) for x in range(m) for y in range(m))


def erdos_class(m: int, p: int, i: int) -> PointSet:
    """The class ``{(x, (x*x mod p) + i) : 0 <= x < m}``.

    For prime ``p >= m`` no three of these points are collinear, and the
    classes with ``1 - p <= i <= m - 1`` partition the ``m x m`` grid.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if p < m or not is_prime(p):
        raise InvalidPrimeError(f"need a prime p >= m = {m}, got {p}")
    return PointSet((x, x * x % p + i) for x in range(m))


def erdos_class_index(x: int, y: int, p: int) -> int:
    """Index of the class containing lattice point ``(x, y)``."""
    return y - x * x % p


def _sample_grid(side: int, count: int, rng: np.random.Generator) -> PointSet:
    picks = np.sort(rng.permutation(side * side)[:count])
    return PointSet((int(v) // side, int(v) % side) for v in picks)


def dense_side(n: int, alpha) -> int:
    """``floor(alpha * sqrt(n / 2))``, computed exactly."""
    q = as_rational(alpha) ** 2 * n / 2
    return isqrt(q.numerator // q.denominator)


def dense_lattice(n: int, alpha, seed: int = 0) -> PointSet:
    """``n`` distinct points drawn uniformly from the ``m x m`` grid.

    Taking ``m = floor(alpha * sqrt(n / 2))`` bounds the diameter by
    ``sqrt(2) * (m - 1) < alpha * sqrt(n)`` while lattice points are at least
    one apart, so the result is alpha-dense by construction.
    """
    if n < 1:
        raise ValueError("n must be positive")
    m = dense_side(n, alpha)
    if m * m < n:
        raise InfeasibleDensityError(
            f"alpha={alpha} gives a {m}x{m} grid, too small for {n} points")
    return _sample_grid(m, n, np.random.default_rng(seed))


def grid_like(n: int, keep=1, seed: int = 0) -> PointSet:
    """Random ``ceil(keep * n)``-point subset of the ``sqrt(n) x sqrt(n)`` grid."""
    side = isqrt(n)
    if side * side != n:
        raise ValueError(f"n={n} is not a perfect square")
    keep = as_rational(keep)
    if not 0 < keep <= 1:
        raise ValueError("keep must lie in (0, 1]")
    count = ceil(keep * n)
    if count < 2:
        raise ValueError("grid_like needs at least two points")
    return _sample_grid(side, count, np.random.default_rng(seed))


def bundle_arrangement(n: int) -> tuple[LineKey, ...]:
    """Three families of parallel lines: vertical, horizontal and slope one.

    The diagonal family sits at half-integer offsets (``2x - 2y + 2j + 1 = 0``)
    so no vertex is shared by three lines and every cross-family pair gives
    its own vertex.
    """
    if n < 3:
        raise ValueError("a bundle arrangement needs n >= 3")
    sizes = [n // 3 + (1 if r < n % 3 else 0) for r in range(3)]
    lines = [canonical_line(1, 0, -j) for j in range(sizes[0])]
    lines += [canonical_line(0, 1, -j) for j in range(sizes[1])]
    lines += [canonical_line(2, -2, 2 * j + 1) for j in range(sizes[2])]
    return tuple(lines)


def degenerate_arrangement(n: int) -> tuple[LineKey, ...]:
    """Three horizontal lines plus ``n - 3`` lines through ``(0, -1)``."""
    if n < 4:
        raise ValueError("a degenerate arrangement needs n >= 4")
    lines = [canonical_line(0, 1, -j) for j in range(3)]
    # x = j * (y + 1): distinct non-horizontal directions through (0, -1).
    lines += [canonical_line(1, -j, -j) for j in range(n - 3)]
    return tuple(lines)


def parallels_with_transversal(n: int) -> tuple[LineKey, ...]:
    """``n - 1`` horizontal lines crossed by the diagonal ``y = x``."""
    if n < 2:
        raise ValueError("need n >= 2")
    return tuple([canonical_line(0, 1, -j) for j in range(n - 1)] + [canonical_line(1, -1, 0)])


def _count_lines(bound: int) -> int:
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    a, b, c = np.meshgrid(r, r, r, indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    ok = ((a > 0) | ((a == 0) & (b > 0))) & (np.gcd(np.gcd(a, b), c) == 1)
    return int(ok.sum())


def random_lines(n: int, bound: int = 100, seed: int = 0) -> tuple[LineKey, ...]:
    """``n`` distinct lines with integer coefficients drawn from ``[-bound, bound]``."""
    if n < 2:
        raise ValueError("need n >= 2")
    if bound < 1:
        raise ValueError("bound must be positive")
    # Every (1, b, c) is a distinct canonical line, so (2*bound + 1)**2 always fit.
    if n > (2 * bound + 1) ** 2 and n > _count_lines(bound):
        raise ExhaustedSpaceError(f"fewer than {n} distinct lines have coefficients in ±{bound}")
    rng = np.random.default_rng(seed)
    seen: dict[LineKey, None] = {}
    while len(seen) < n:
        a, b, c = (int(v) for v in rng.integers(-bound, bound + 1, size=3))
        if a == 0 and b == 0:
            continue
        seen.setdefault(canonical_line(a, b, c))
    return tuple(seen)


FAMILIES = {
    "grid": grid,
    "erdos": erdos_class,
    "dense": dense_lattice,
    "gridlike": grid_like,
    "bundles": bundle_arrangement,
    "degenerate": degenerate_arrangement,
    "transversal": parallels_with_transversal,
    "random-lines": random_lines,
}
