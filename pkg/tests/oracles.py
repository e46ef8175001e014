"""Slow reference implementations used as test oracles."""
import itertools

from gpss import Point, PointSet, collinear


def brute_triples(points) -> int:
    return sum(1 for a, b, c in itertools.combinations(points, 3) if collinear(a, b, c))


def brute_opt(points) -> int:
    """Largest general-position subset by trying subsets from the largest size down."""
    pts = list(points)
    for size in range(len(pts), 2, -1):
        for sub in itertools.combinations(pts, size):
            if not any(collinear(a, b, c) for a, b, c in itertools.combinations(sub, 3)):
                return size
    return min(len(pts), 2)


def random_lattice(rng, n, side) -> PointSet:
    cells = rng.choice(side * side, size=min(n, side * side), replace=False)
    return PointSet(sorted(Point(int(c // side), int(c % side)) for c in cells))
