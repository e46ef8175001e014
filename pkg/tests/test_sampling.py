import math
import warnings
from fractions import Fraction

import pytest

from gpss import (
    Point,
    PointSet,
    SamplingPlan,
    arrangement_vertices,
    bundle_arrangement,
    choose_k,
    degenerate_arrangement,
    erdos_class,
    grid,
    is_general_position,
    run_trials,
    sample_delete_arrangement,
    sample_delete_gridlike,
)
from gpss.errors import DegenerateArrangementError, PreconditionError


def per_line_max(lines, chosen):
    return max(sum(1 for v in chosen if line.contains(v)) for line in lines)


def test_choose_k_examples():
    plan = choose_k("gridlike", 64, c_prime=1)
    assert plan.k == pytest.approx(math.sqrt(64 / 6))
    assert plan.p == pytest.approx(math.sqrt(64 / 6) / 64)
    plan = choose_k("arrangement", 2, 1, 1)
    assert 0 < plan.p < 1 and plan.k < 1
    plan = choose_k("arrangement", 30, 300, 1)
    assert plan.k == pytest.approx(30 / math.sqrt(math.log2(30)))
    assert plan.p == pytest.approx(plan.k / 300)
    assert choose_k("arrangement", 30, 300, Fraction(1, 2)).k == pytest.approx(plan.k / 2)


def test_choose_k_errors():
    with pytest.raises(ValueError):
        choose_k("gridlike", 1)
    with pytest.raises(ValueError):
        choose_k("arrangement", 10)
    with pytest.raises(ValueError):
        choose_k("other", 10, 10)
    with pytest.raises(ValueError):
        choose_k("gridlike", 10, c_prime=0)


def test_plan_validation():
    with pytest.raises(PreconditionError):
        SamplingPlan("gridlike", 64, 1.0, Fraction(1), 10, 64)
    with pytest.raises(PreconditionError):
        SamplingPlan("gridlike", 0, 0.0, Fraction(1), 10, 64)
    with pytest.raises(ValueError):
        SamplingPlan("gridlike", 1, 0.5, Fraction(1), 0, 2)


def test_two_crossing_lines():
    lines = [(1, 0, 0), (0, 1, 0)]
    plan = choose_k("arrangement", 2, 1, 1)
    res = sample_delete_arrangement(lines, plan=plan, seed=0)
    assert len(res.chosen) <= 1
    assert res.opt_upper_bound == 4 and res.bound_source == "line-bound"


def test_bundles_default_plan():
    lines = bundle_arrangement(30)
    res = sample_delete_arrangement(lines, seed=0)
    assert is_general_position(res.chosen)
    assert per_line_max(lines, res.chosen) <= 2
    assert res.chosen.issubset(arrangement_vertices(lines))
    assert res.stats["generic"] and res.stats["vertices"] == 300
    first = res.stats["attempts"][0]
    assert len(first["sample_sizes"]) == 50
    assert first["k_half"] == first["k"] / 2
    res.check()


def test_degenerate_warns_but_stays_sound():
    lines = degenerate_arrangement(100)
    verts = arrangement_vertices(lines)
    with pytest.warns(RuntimeWarning, match="not generic"):
        res = sample_delete_arrangement(lines, restrict=verts, seed=2, trials=10)
    assert is_general_position(res.chosen)
    assert per_line_max(lines, res.chosen) <= 2


def test_restrict_must_be_vertices():
    lines = bundle_arrangement(9)
    with pytest.raises(PreconditionError):
        sample_delete_arrangement(lines, restrict=[Point(100, 100)])
    with pytest.raises(DegenerateArrangementError):
        sample_delete_arrangement([(1, 0, 0), (1, 0, -1)])
    with pytest.raises(PreconditionError):
        sample_delete_arrangement([(1, 0, 0)])


def test_restrict_subset():
    lines = bundle_arrangement(30)
    sub = arrangement_vertices(lines)[:150]
    res = sample_delete_arrangement(lines, restrict=sub, seed=4)
    assert res.chosen.issubset(sub)
    assert res.stats["population"] == 150


def test_adaptive_halving_records_attempts():
    # A dense collinear population forces many deletions at the formula k.
    pts = PointSet(Point(i, 0) for i in range(200))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = sample_delete_gridlike(pts, seed=0, trials=5)
    attempts = res.stats["attempts"]
    assert 1 <= len(attempts) <= 7
    for a, b in zip(attempts, attempts[1:]):
        assert b["k"] == pytest.approx(a["k"] / 2)
        assert a["mean_deletions"] > a["k"] / 2
    assert len(res.chosen) <= 2


def test_fixed_c_prime_is_single_attempt():
    res = sample_delete_gridlike(grid(8), seed=0, c_prime=2, trials=10)
    assert len(res.stats["attempts"]) == 1 and not res.stats["adaptive"]
    assert res.stats["attempts"][0]["k"] == pytest.approx(2 * math.sqrt(64 / 6))


def test_gridlike_full_grid():
    res = sample_delete_gridlike(grid(8), seed=1)
    assert is_general_position(res.chosen)
    assert res.opt_upper_bound <= 16 and res.bound_source == "cover-bound"
    res.check(grid(8))


def test_gridlike_general_position_input():
    v = erdos_class(11, 11, 0)
    plan = SamplingPlan("gridlike", 10, 10 / 11, Fraction(1), 20, 11)
    res = sample_delete_gridlike(v, plan=plan, seed=0)
    assert all(d == 0 for d in res.stats["attempts"][0]["deletions"])
    assert len(res.chosen) >= 9


def test_gridlike_collinear_input():
    pts = PointSet(Point(i, 3 * i) for i in range(40))
    with pytest.warns(RuntimeWarning, match="grid-like"):
        res = sample_delete_gridlike(pts, seed=0)
    assert len(res.chosen) <= 2


def test_trials_deterministic_and_sound():
    verts = arrangement_vertices(bundle_arrangement(30))
    a = run_trials(verts, 0.05, 10, seed=9)
    b = run_trials(verts, 0.05, 10, seed=9)
    assert [t.sample for t in a] == [t.sample for t in b]
    assert [t.sample for t in a] != [t.sample for t in run_trials(verts, 0.05, 10, seed=10)]
    for t in a:
        assert is_general_position(t.chosen)
        assert t.deletions <= t.triples
        assert t.deletions == len(t.sample) - len(t.chosen)


def test_solver_reproducible():
    lines = bundle_arrangement(24)
    a = sample_delete_arrangement(lines, seed=5)
    b = sample_delete_arrangement(lines, seed=5)
    assert a.chosen == b.chosen and a.stats == b.stats
