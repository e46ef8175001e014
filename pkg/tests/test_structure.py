import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpss import (
    Point,
    PointSet,
    arrangement_vertices,
    bundle_arrangement,
    canonical_line,
    collinear_triples,
    degenerate_arrangement,
    density_report,
    erdos_class,
    greedy_line_cover,
    grid,
    is_alpha_dense,
    is_generic,
    line_profile,
    max_collinear,
)
from gpss.structure import alpha_upper

from oracles import brute_triples, random_lattice

lattice_sets = st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=2,
                        max_size=25, unique=True).map(lambda c: PointSet(Point(x, y) for x, y in c))


def exhaustive_cover_number(points) -> int:
    """Smallest line cover: some determined lines plus one line per leftover point."""
    pts = list(points)
    if len(pts) < 2:
        return len(pts)
    masks = {frozenset(i for i, p in enumerate(pts) if canonical_line(*l).contains(p))
             for l in line_profile(pts).entries}
    full = frozenset(range(len(pts)))
    best = len(pts)
    for j in range(1, len(pts)):
        if j >= best:
            break
        for combo in combinations(masks, j):
            best = min(best, j + len(full - frozenset().union(*combo)))
    return best


def test_line_profile_examples(g3):
    prof = line_profile(grid(2))
    assert len(prof) == 6 and set(prof.entries.values()) == {2}
    prof = line_profile([Point(0, 0), Point(1, 1), Point(2, 2)])
    assert list(prof.entries.values()) == [3]
    prof = line_profile(g3)
    assert len(prof.heavy()) == 8 and set(prof.heavy().values()) == {3}
    assert prof.pair_count() == 36


@given(lattice_sets)
def test_pair_sum_invariant(pts):
    n = len(pts)
    assert line_profile(pts).pair_count() == n * (n - 1) // 2


def test_collinear_triples_examples(g3):
    assert collinear_triples(erdos_class(8, 11, 0)) == 0
    assert collinear_triples([Point(i, i) for i in range(4)]) == 4
    assert collinear_triples(g3) == 8


@settings(max_examples=60)
@given(lattice_sets)
def test_triples_match_enumeration(pts):
    assert collinear_triples(pts) == brute_triples(pts)


def test_max_collinear(g3):
    assert max_collinear(g3) == 3
    assert max_collinear([Point(i, 2 * i + 1) for i in range(7)]) == 7
    for m in range(2, 9):
        assert max_collinear(grid(m)) == m
    assert max_collinear(erdos_class(10, 11, 3)) == 2
    with pytest.raises(ValueError):
        max_collinear([Point(0, 0)])


def test_density_examples():
    rep = density_report(grid(8))
    assert (rep.min_sq, rep.max_sq, rep.spread_sq) == (1, 98, 98)
    assert is_alpha_dense(grid(8), 2)
    rep = density_report([Point(0, 0), Point(1, 0)])
    assert rep.spread_sq == 1
    assert is_alpha_dense([Point(0, 0), Point(1, 0)], Fraction(71, 100))
    assert not is_alpha_dense([Point(0, 0), Point(1, 0)], Fraction(70, 100))


def test_density_rational_and_large_coordinates():
    pts = PointSet([Point(Fraction(1, 2), 0), Point(0, 0), Point(2, 0)])
    rep = density_report(pts)
    assert (rep.min_sq, rep.max_sq, rep.spread_sq) == (Fraction(1, 4), 4, 16)
    big = PointSet([Point(0, 0), Point(2 ** 40, 0), Point(1, 0)])
    assert density_report(big).spread_sq == 2 ** 80


@settings(max_examples=40)
@given(lattice_sets)
def test_density_matches_pairwise(pts):
    sq = [(p.x - q.x) ** 2 + (p.y - q.y) ** 2 for p, q in combinations(pts, 2)]
    rep = density_report(pts)
    assert rep.min_sq == min(sq) and rep.max_sq == max(sq)
    assert rep.spread_sq >= 1
    a = alpha_upper(pts)
    assert is_alpha_dense(pts, a)
    assert not is_alpha_dense(pts, a - Fraction(1, 100)) or a == Fraction(1, 100)


def test_fig1_parameters_are_2_dense():
    # 25 points of G_8 including two opposite corners: spread 98 <= 4 * 25.
    rng = np.random.default_rng(1)
    inner = [Point(int(c // 8), int(c % 8)) for c in rng.choice(np.arange(1, 63), 23, replace=False)]
    pts = PointSet([Point(0, 0), Point(7, 7), *inner])
    assert density_report(pts).spread_sq == 98
    assert is_alpha_dense(pts, 2)


def test_greedy_cover_examples():
    cert = greedy_line_cover([Point(i, i) for i in range(5)])
    assert cert.size == 1 and cert.covered
    for m in range(1, 9):
        cert = greedy_line_cover(grid(m))
        assert cert.covered and cert.size == m
    for n in (1, 2, 5, 8):
        cert = greedy_line_cover(erdos_class(n, 11, 0))
        assert cert.size == math.ceil(n / 2)


def test_greedy_cover_tie_break_smallest_key(g3):
    cert = greedy_line_cover(g3)
    # Eight 3-point lines tie at the start; the smallest key is y = 2.
    assert cert.lines[0] == (0, 1, -2)


def test_greedy_cover_against_exhaustive():
    rng = np.random.default_rng(2)
    for _ in range(25):
        pts = random_lattice(rng, int(rng.integers(3, 10)), 4)
        cert = greedy_line_cover(pts)
        assert cert.covered and cert.size == len(cert.lines)
        assert cert.size >= exhaustive_cover_number(pts)
    for m in range(1, 5):
        assert exhaustive_cover_number(grid(m)) == m


@given(lattice_sets)
def test_cover_certificate_valid(pts):
    cert = greedy_line_cover(pts)
    assert cert.covered
    assert all(any(l.contains(p) for l in cert.lines) for p in pts)
    assert sum(cert.gains) == len(pts)
    assert cert.opt_bound <= 2 * cert.size


def test_arrangement_vertices_examples():
    assert arrangement_vertices([(1, 0, 0), (0, 1, 0)]) == PointSet([Point(0, 0)])
    concurrent = [canonical_line(a, 1, 0) for a in range(-3, 4)]
    assert len(arrangement_vertices(concurrent)) == 1
    gridlines = [(1, 0, -j) for j in range(3)] + [(0, 1, -j) for j in range(3)]
    assert arrangement_vertices(gridlines) == grid(3)
    assert len(arrangement_vertices([(1, 0, 0), (1, 0, -1)])) == 0


def test_arrangement_vertices_rational():
    verts = arrangement_vertices([(1, 1, -1), (1, -1, 0)])
    assert list(verts) == [Point(Fraction(1, 2), Fraction(1, 2))]


def test_is_generic_examples():
    assert is_generic(bundle_arrangement(30), Fraction(1, 4))
    assert len(arrangement_vertices(bundle_arrangement(30))) == 300
    assert not is_generic(degenerate_arrangement(100), Fraction(1, 4))
    assert not is_generic(degenerate_arrangement(100), Fraction(1, 10))
    assert is_generic([(1, 0, 0), (0, 1, 0)], Fraction(1, 4))
    with pytest.raises(ValueError):
        is_generic([(1, 0, 0)], Fraction(1, 4))
