"""Deterministic subset selection: exact search, the greedy baseline and the
Erdős-class algorithm for dense lattice sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import NotDenseError, NotLatticeError
from .generators import erdos_class_index
from .geometry import PointSet, as_point_set, as_rational, incidences, is_general_position, line_through
from .primes import next_prime_at_least
from .structure import greedy_line_cover, is_alpha_dense

BOUND_SOURCES = ("exact", "row-bound", "line-bound", "cover-bound")


@dataclass
class SolveResult:
    """Output of a subset-selection algorithm with a certified ratio.

    ``opt_upper_bound`` is a proven upper bound on the optimum for the input,
    so ``ratio_lower_bound = |chosen| / opt_upper_bound`` never overstates
    the true approximation ratio.
    """

    chosen: PointSet
    algorithm: str
    opt_upper_bound: int
    bound_source: str
    seed: int | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bound_source not in BOUND_SOURCES:
            raise ValueError(f"unknown bound source {self.bound_source!r}")

    @property
    def size(self) -> int:
        return len(self.chosen)

    @property
    def ratio_lower_bound(self) -> Fraction:
        if self.opt_upper_bound == 0:
            return Fraction(1)
        return Fraction(len(self.chosen), self.opt_upper_bound)

    def check(self, source: PointSet | None = None) -> None:
        """Raise ``AssertionError`` if any result invariant is violated."""
        if source is not None and not self.chosen.issubset(as_point_set(source)):
            raise AssertionError("chosen points are not a subset of the input")
        if not is_general_position(self.chosen):
            raise AssertionError("chosen points are not in general position")
        if len(self.chosen) > self.opt_upper_bound:
            raise AssertionError("chosen set exceeds the certified optimum bound")
        if self.bound_source == "exact" and len(self.chosen) != self.opt_upper_bound:
            raise AssertionError("exact result must attain its bound")


def greedy_gpss(points, order: str = "input", seed: int = 0) -> SolveResult:
    """Scan the points once and keep each one that closes no collinear triple.

    ``order`` is ``"input"`` or ``"shuffle"`` (a permutation drawn from
    ``seed``). The lines spanned by kept pairs are tracked in a set, so a
    candidate is rejected as soon as it lands on one of them.
    """
    pts = as_point_set(points)
    if order == "input":
        scan = list(pts)
    elif order == "shuffle":
        scan = [pts[int(k)] for k in np.random.default_rng(seed).permutation(len(pts))]
    else:
        raise ValueError(f"unknown order {order!r}")

    kept = []
    spanned = set()
    for r in scan:
        new_lines = [line_through(q, r) for q in kept]
        if any(line in spanned for line in new_lines):
            continue
        spanned.update(new_lines)
        kept.append(r)
    bound = greedy_line_cover(pts).opt_bound if len(pts) > 2 else len(pts)
    return SolveResult(PointSet(kept), "greedy", bound, "cover-bound",
                       seed=seed if order == "shuffle" else None,
                       stats={"order": order, "scanned": len(scan)})


class _BudgetExhausted(Exception):
    pass


def exact_gpss(points, node_budget: int = 1_000_000) -> SolveResult:
    """Maximum general-position subset by branch and bound.

    Branches include/exclude on the lowest-index remaining candidate. A node
    is pruned when the chosen count plus a cover bound on the candidates
    cannot beat the incumbent: candidates are partitioned along lines with at
    least three points, and a line that already holds ``c`` chosen points
    admits at most ``2 - c`` more. The greedy scan seeds the incumbent.

    If ``node_budget`` runs out the best set found is returned with the root
    cover bound instead of an exact certificate.
    """
    pts = as_point_set(points)
    n = len(pts)
    if is_general_position(pts):
        return SolveResult(pts, "exact", n, "exact", stats={"nodes": 0, "budget_exhausted": False})

    inc = incidences(pts)
    line_masks = [sum(1 << int(v) for v in inc.members(k)) for k in range(len(inc))]
    pair_line = [[0] * n for _ in range(n)]
    for k, mask in enumerate(line_masks):
        members = [int(v) for v in inc.members(k)]
        for s, u in enumerate(members):
            for v in members[s + 1:]:
                pair_line[u][v] = pair_line[v][u] = mask
    heavy = [line_masks[k] for k in inc.heavy()]

    def cover_bound(chosen: int, cand: int) -> int:
        rem = cand
        total = 0
        caps = [(mask, 2 - (mask & chosen).bit_count()) for mask in heavy if mask & cand]
        while True:
            best_saving, best = 0, None
            for mask, cap in caps:
                saving = (mask & rem).bit_count() - cap
                if saving > best_saving:
                    best_saving, best = saving, (mask, cap)
            if best is None:
                return total + rem.bit_count()
            total += best[1]
            rem &= ~best[0]

    incumbent = greedy_gpss(pts)
    index = {p: k for k, p in enumerate(pts)}
    best = [sum(1 << index[p] for p in incumbent.chosen), len(incumbent.chosen)]
    nodes = 0

    def search(chosen: int, chosen_list: list[int], cand: int) -> None:
        # The exclude branch continues in this frame, so recursion depth is
        # the number of chosen points rather than n.
        nonlocal nodes
        size = len(chosen_list)
        while True:
            nodes += 1
            if nodes > node_budget:
                raise _BudgetExhausted
            if cand == 0:
                if size > best[1]:
                    best[0], best[1] = chosen, size
                return
            if size + cand.bit_count() <= best[1]:
                return
            if size + cover_bound(chosen, cand) <= best[1]:
                return
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            reduced = cand & ~bit
            for u in chosen_list:
                reduced &= ~pair_line[u][v]
            chosen_list.append(v)
            search(chosen | bit, chosen_list, reduced)
            chosen_list.pop()
            cand &= ~bit

    root_bound = min(n, cover_bound(0, (1 << n) - 1))
    exhausted = False
    try:
        search(0, [], (1 << n) - 1)
    except _BudgetExhausted:
        exhausted = True
    chosen = pts.take(k for k in range(n) if best[0] >> k & 1)
    stats = {"nodes": nodes, "budget_exhausted": exhausted, "root_bound": root_bound}
    if exhausted:
        return SolveResult(chosen, "exact", root_bound, "cover-bound", stats=stats)
    return SolveResult(chosen, "exact", len(chosen), "exact", stats=stats)


def _ceil_sqrt(q: Fraction) -> int:
    """Smallest integer ``m >= 0`` with ``m * m >= q``."""
    m = isqrt(-(-q.numerator // q.denominator))
    while m * m < q:
        m += 1
    return m


def erdos_buckets(points, p: int) -> dict[int, PointSet]:
    """Split lattice points by class index ``y - (x*x mod p)``.

    Points are expected to be translated into the first quadrant already.
    Buckets keep input order and are returned in ascending index order.
    """
    groups: dict[int, list] = {}
    for q in as_point_set(points):
        groups.setdefault(erdos_class_index(q.x, q.y, p), []).append(q)
    return {i: PointSet(groups[i]) for i in sorted(groups)}


def dense_lattice_gpss(points, alpha) -> SolveResult:
    """Largest Erdős class of an alpha-dense lattice set.

    The input is translated so its bounding box starts at the origin and
    fits in the ``m x m`` grid, ``m`` being the box side. With ``p`` the
    smallest prime ``>= m`` the grid splits into ``m + p - 1`` classes, each
    in general position, so the largest class meeting the input has at least
    ``ceil(n / (m + p - 1))`` points. Every grid row holds at most two points
    of any solution, which gives the certificate ``OPT <= 2m``.
    """
    pts = as_point_set(points)
    alpha = as_rational(alpha)
    n = len(pts)
    if not pts.is_integral:
        raise NotLatticeError("dense_lattice_gpss needs integer coordinates")
    if n == 0:
        return SolveResult(pts, "dense", 0, "row-bound", stats={})

    x0 = min(q.x for q in pts)
    y0 = min(q.y for q in pts)
    shifted = pts.translate(-x0, -y0)
    m = max(max(q.x for q in shifted), max(q.y for q in shifted)) + 1
    if n >= 2 and not is_alpha_dense(shifted, alpha):
        raise NotDenseError(f"input is not {alpha}-dense")
    p = next_prime_at_least(max(m, 2))

    buckets = erdos_buckets(shifted, p)
    best_i = max(buckets, key=lambda i: (len(buckets[i]), -i))
    chosen = buckets[best_i].translate(x0, y0)
    classes = m + p - 1
    stats = {
        "m": m,
        "m_alpha": _ceil_sqrt(alpha * alpha * n),
        "p": p,
        "classes": classes,
        "nonempty_classes": len(buckets),
        "class_index": best_i,
        "guarantee": -(-n // classes),
        "translation": (-x0, -y0),
    }
    return SolveResult(chosen, "dense", 2 * m, "row-bound", stats=stats)
