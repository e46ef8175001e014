"""Random sampling followed by deletion of collinear triples.

A trial keeps every candidate point independently with probability ``p``
and then deletes points until no three survivors are collinear. The
expected sample size is ``k = p * N``; the expected number of collinear
triples in the sample is ``T * p**3``. Choosing ``k`` so that the second is
at most ``k / 2`` leaves about ``k / 2`` points after deletion.

The constant that makes ``k`` safe is not known in closed form, so by
default ``k`` starts at the formula value with ``c' = 1`` and is halved
while the observed mean deletion count exceeds ``k / 2``.
"""
from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import DegenerateArrangementError, PreconditionError
from .geometry import PointSet, as_line_set, as_point_set, as_rational, incidences
from .solvers import SolveResult
from .structure import _greedy_cover, _triples, arrangement_vertices

DEFAULT_TRIALS = 50
MAX_HALVINGS = 6


@dataclass(frozen=True)
class SamplingPlan:
    """Inclusion probability ``p = k / population`` and the trial count."""

    variant: str
    k: float
    p: float
    c_prime: Fraction
    trials: int
    population: int

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise PreconditionError(f"sampling probability must lie in (0, 1), got {self.p}")
        if self.trials < 1:
            raise ValueError("need at least one trial")

    def scaled(self, factor: float) -> "SamplingPlan":
        return replace(self, k=self.k * factor, p=self.p * factor)


def choose_k(variant: str, n: int, N: int | None = None, c_prime=1,
             trials: int = DEFAULT_TRIALS) -> SamplingPlan:
    """Target sample size for either sampler.

    ``arrangement``: ``k = c' * n / sqrt(log2 n)`` over the ``N`` vertices of
    an ``n``-line arrangement. ``gridlike``: ``k = c' * sqrt(n / log2 n)``
    over ``n`` points. ``p`` is capped at ``population / (population + 1)``.
    """
    if n < 2:
        raise ValueError("choose_k needs n >= 2")
    c_prime = as_rational(c_prime)
    if c_prime <= 0:
        raise ValueError("c' must be positive")
    if variant == "arrangement":
        if N is None or N < 1:
            raise ValueError("the arrangement variant needs N >= 1")
        population = N
        k = float(c_prime) * n / math.sqrt(math.log2(n))
    elif variant == "gridlike":
        population = n
        k = float(c_prime) * math.sqrt(n / math.log2(n))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    p = min(k / population, population / (population + 1))
    return SamplingPlan(variant, p * population, p, c_prime, trials, population)


def _deletion_order(pts: PointSet, inc) -> list[int]:
    heavy = inc.heavy()
    line_members = {int(k): set(inc.members(k).tolist()) for k in heavy}
    point_lines: dict[int, set[int]] = {}
    for k, members in line_members.items():
        for v in members:
            point_lines.setdefault(v, set()).add(k)
    heap = [(-len(ls), pts[v], v) for v, ls in point_lines.items()]
    heapq.heapify(heap)
    deleted = []
    while heap:
        neg, _, v = heapq.heappop(heap)
        lines = point_lines[v]
        if len(lines) != -neg or not lines:
            continue
        deleted.append(v)
        for k in lines:
            members = line_members[k]
            members.discard(v)
            if len(members) < 3:
                for u in members:
                    point_lines[u].discard(k)
                    if point_lines[u]:
                        heapq.heappush(heap, (-len(point_lines[u]), pts[u], u))
        point_lines[v] = set()
    return deleted


def make_general_position(points) -> tuple[PointSet, int]:
    """Delete points until no three are collinear.

    Each step removes the point lying on the most lines that still carry
    three or more points, ties going to the smallest point. Every deletion
    destroys at least one collinear triple, so the deletion count never
    exceeds the triple count of the input. Survivors keep input order.
    """
    pts = as_point_set(points)
    if len(pts) < 3:
        return pts, 0
    deleted = set(_deletion_order(pts, incidences(pts)))
    return pts.take(v for v in range(len(pts)) if v not in deleted), len(deleted)


@dataclass(frozen=True)
class Trial:
    attempt: int
    index: int
    sample: PointSet
    chosen: PointSet
    triples: int
    deletions: int

    @property
    def sample_size(self) -> int:
        return len(self.sample)


def trial_rng(seed: int, attempt: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(attempt, index)))


def sample_delete_trial(population: PointSet, p: float, rng: np.random.Generator,
                        attempt: int = 0, index: int = 0) -> Trial:
    keep = np.flatnonzero(rng.random(len(population)) < p)
    sample = population.take(keep)
    if len(sample) < 3:
        return Trial(attempt, index, sample, sample, 0, 0)
    inc = incidences(sample)
    deleted = set(_deletion_order(sample, inc))
    chosen = sample.take(v for v in range(len(sample)) if v not in deleted)
    return Trial(attempt, index, sample, chosen, _triples(inc), len(deleted))


def run_trials(population, p: float, trials: int, seed: int = 0, attempt: int = 0) -> list[Trial]:
    """Independent trials; trial ``t`` draws from ``SeedSequence(seed, (attempt, t))``."""
    population = as_point_set(population)
    return [sample_delete_trial(population, p, trial_rng(seed, attempt, t), attempt, t)
            for t in range(trials)]


def _summary(plan: SamplingPlan, trials: list[Trial]) -> dict:
    sizes = [t.sample_size for t in trials]
    triples = [t.triples for t in trials]
    deletions = [t.deletions for t in trials]
    return {
        "k": plan.k,
        "p": plan.p,
        "k_half": plan.k / 2,
        "trials": len(trials),
        "mean_sample": float(np.mean(sizes)),
        "mean_triples": float(np.mean(triples)),
        "mean_deletions": float(np.mean(deletions)),
        "best": max(len(t.chosen) for t in trials),
        "sample_sizes": sizes,
        "triples": triples,
        "deletions": deletions,
    }


def _solve(population: PointSet, plan: SamplingPlan, adaptive: bool, seed: int):
    attempts = []
    best: Trial | None = None
    for attempt in range(MAX_HALVINGS + 1 if adaptive else 1):
        trials = run_trials(population, plan.p, plan.trials, seed, attempt)
        summary = _summary(plan, trials)
        attempts.append(summary)
        for t in trials:
            if best is None or len(t.chosen) > len(best.chosen):
                best = t
        if not adaptive or summary["mean_deletions"] <= plan.k / 2:
            break
        plan = plan.scaled(0.5)
    stats = {
        "population": len(population),
        "adaptive": adaptive,
        "attempts": attempts,
        "best_attempt": best.attempt,
        "best_trial": best.index,
    }
    return best, stats


def _plan(variant, n, N, plan, c_prime, trials):
    if plan is not None:
        if plan.variant != variant:
            raise ValueError(f"plan is for the {plan.variant} sampler")
        return plan, False
    if c_prime is not None:
        return choose_k(variant, n, N, c_prime, trials), False
    return choose_k(variant, n, N, 1, trials), True


def sample_delete_arrangement(lines, restrict=None, plan: SamplingPlan | None = None,
                              seed: int = 0, *, c_prime=None, trials: int = DEFAULT_TRIALS,
                              genericity_c=Fraction(1, 10)) -> SolveResult:
    """Sample-and-delete over the vertices of a line arrangement.

    With ``restrict`` the sampling runs over that subset of the vertices
    instead. No input line can carry more than two points of a solution, so
    ``2n`` bounds the optimum. Without ``plan`` or ``c_prime`` the sample
    size is tuned adaptively (see the module docstring).
    """
    ls = as_line_set(lines)
    n = len(ls)
    if n < 2:
        raise PreconditionError("need at least two lines")
    vertices = arrangement_vertices(ls)
    if restrict is None:
        population = vertices
    else:
        population = as_point_set(restrict)
        if not population.issubset(vertices):
            raise PreconditionError("restrict must be a subset of the arrangement vertices")
    if len(population) == 0:
        raise DegenerateArrangementError("the arrangement has no vertices to sample")
    generic = bool(len(vertices) >= as_rational(genericity_c) * n * n)
    if not generic:
        warnings.warn(f"arrangement of {n} lines with {len(vertices)} vertices is not generic "
                      f"at c={genericity_c}", RuntimeWarning, stacklevel=2)

    plan, adaptive = _plan("arrangement", n, len(population), plan, c_prime, trials)
    best, stats = _solve(population, plan, adaptive, seed)
    stats.update(lines=n, vertices=len(vertices), generic=generic)
    return SolveResult(best.chosen, "sample-arrangement", 2 * n, "line-bound", seed=seed, stats=stats)


def sample_delete_gridlike(points, plan: SamplingPlan | None = None, seed: int = 0, *,
                           c_prime=None, trials: int = DEFAULT_TRIALS,
                           regime_factor: float = 2.0) -> SolveResult:
    """Sample-and-delete over a point set with few points per line and a small line cover.

    The optimum is bounded by twice the size of a greedy line cover. A
    warning is issued when the largest collinear subset or the cover exceeds
    ``regime_factor * sqrt(n)``.
    """
    pts = as_point_set(points)
    n = len(pts)
    if n < 2:
        raise PreconditionError("need at least two points")
    inc = incidences(pts)
    ell = int(inc.sizes.max())
    cover = _greedy_cover(pts, inc)
    limit = regime_factor * math.sqrt(n)
    if ell > limit or cover.size > limit:
        warnings.warn(f"point set is outside the grid-like regime: max collinear {ell}, "
                      f"cover {cover.size}, sqrt(n) = {math.sqrt(n):.2f}",
                      RuntimeWarning, stacklevel=2)

    plan, adaptive = _plan("gridlike", n, None, plan, c_prime, trials)
    best, stats = _solve(pts, plan, adaptive, seed)
    stats.update(max_collinear=ell, cover_size=cover.size)
    return SolveResult(best.chosen, "sample-gridlike", 2 * cover.size, "cover-bound",
                       seed=seed, stats=stats)


__all__ = [
    "SamplingPlan", "Trial", "choose_k", "make_general_position", "run_trials",
    "sample_delete_arrangement", "sample_delete_gridlike", "sample_delete_trial",
]
