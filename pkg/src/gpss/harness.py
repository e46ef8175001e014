"""Experiment records, solver dispatch and parameter sweeps."""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError
from .generators import FAMILIES
from .geometry import as_rational, is_general_position
from .io import Instance
from .sampling import DEFAULT_TRIALS, sample_delete_arrangement, sample_delete_gridlike
from .solvers import SolveResult, dense_lattice_gpss, exact_gpss, greedy_gpss
from .structure import alpha_upper

LINE_FAMILIES = {"bundles", "degenerate", "transversal", "random-lines"}
SEEDED_FAMILIES = {"dense", "gridlike", "random-lines"}
SIZE_PARAM = {"grid": "m", "erdos": "m"}

ALGORITHMS = {
    "exact": "points",
    "greedy": "points",
    "dense": "points",
    "sample-gridlike": "points",
    "sample-arrangement": "lines",
}


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


@dataclass
class ExperimentRecord:
    family: str | None
    params: dict
    seed: int | None
    alg: str
    n: int
    size: int
    bound: int
    bound_source: str
    ratio_lb: Fraction
    opt: int | None = None
    ms: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def true_ratio(self) -> Fraction | None:
        return None if not self.opt else Fraction(self.size, self.opt)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "family": self.family,
            "params": _jsonable(self.params),
            "seed": self.seed,
            "alg": self.alg,
            "n": self.n,
            "size": self.size,
            "bound": self.bound,
            "bound_source": self.bound_source,
            "ratio_lb": str(self.ratio_lb),
            "opt": self.opt,
            "ms": round(self.ms, 3),
            "stats": _jsonable(self.stats),
        }
        if not timing:
            del out["ms"]
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), separators=(",", ":"))


def make_instance(family: str, params: dict) -> Instance:
    """Run generator ``family`` with keyword ``params``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(sorted(FAMILIES))}")
    params = dict(params)
    kwargs = dict(params)
    for key in ("alpha", "keep"):
        if key in kwargs:
            kwargs[key] = as_rational(kwargs[key])
    if family == "random-lines" and "range" in kwargs:
        kwargs["bound"] = kwargs.pop("range")
    out = FAMILIES[family](**kwargs)
    if family in LINE_FAMILIES:
        return Instance("lines", lines=out, family=family, params=params)
    return Instance("points", points=out, family=family, params=params)


def run_algorithm(inst: Instance, alg: str, params: dict | None = None,
                  seed: int = 0) -> SolveResult:
    """Dispatch ``alg`` on ``inst``; raises PreconditionError on kind mismatch."""
    params = dict(params or {})
    if alg not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {alg!r}; choose from {', '.join(ALGORITHMS)}")
    if ALGORITHMS[alg] != inst.kind:
        raise PreconditionError(f"{alg} needs a {ALGORITHMS[alg]} instance, got {inst.kind}")
    trials = int(params.get("trials", DEFAULT_TRIALS))
    c_prime = params.get("c_prime")
    if alg == "exact":
        return exact_gpss(inst.points, int(params.get("node_budget", 1_000_000)))
    if alg == "greedy":
        return greedy_gpss(inst.points, params.get("order", "input"), seed)
    if alg == "dense":
        alpha = params.get("alpha")
        if alpha is None:
            alpha = alpha_upper(inst.points) if len(inst.points) >= 2 else 1
        return dense_lattice_gpss(inst.points, as_rational(alpha))
    if alg == "sample-gridlike":
        return sample_delete_gridlike(inst.points, seed=seed, c_prime=c_prime, trials=trials)
    return sample_delete_arrangement(inst.lines, seed=seed, c_prime=c_prime, trials=trials,
                                     genericity_c=params.get("genericity_c", Fraction(1, 10)))


def solve(inst: Instance, alg: str, params: dict | None = None, seed: int = 0,
          opt: int | None = None) -> tuple[SolveResult, ExperimentRecord]:
    """Run one solver, re-verify its output and wrap it in a record."""
    start = time.perf_counter()
    result = run_algorithm(inst, alg, params, seed)
    ms = (time.perf_counter() - start) * 1000
    if not is_general_position(result.chosen):
        raise AssertionError(f"{alg} produced a set that is not in general position")
    if result.bound_source == "exact":
        opt = result.opt_upper_bound
    record = ExperimentRecord(
        family=inst.family, params=dict(inst.params), seed=seed, alg=alg, n=inst.n,
        size=result.size, bound=result.opt_upper_bound, bound_source=result.bound_source,
        ratio_lb=result.ratio_lower_bound, opt=opt, ms=ms, stats=_record_stats(result),
    )
    return result, record


def _record_stats(result: SolveResult) -> dict:
    stats = dict(result.stats)
    attempts = stats.pop("attempts", None)
    if attempts:
        # Per-trial lists stay in the record only for the attempt that won.
        stats["attempts"] = [
            {k: v for k, v in a.items() if k not in ("sample_sizes", "triples", "deletions")}
            for a in attempts
        ]
        best = attempts[stats["best_attempt"]]
        stats["trials"] = {k: best[k] for k in ("sample_sizes", "triples", "deletions")}
    return stats


def fit_constant(alg: str, record: ExperimentRecord) -> tuple[str, float | None]:
    """Normalized output size whose stability across n tracks the guarantee."""
    n, size = record.n, record.size
    if alg == "sample-arrangement" and n >= 2:
        return "size*sqrt(log2 n)/n", size * math.sqrt(math.log2(n)) / n
    if alg == "sample-gridlike" and n >= 2:
        return "size/sqrt(n/log2 n)", size / math.sqrt(n / math.log2(n))
    if alg == "dense" and record.stats.get("guarantee"):
        return "size/ceil(n/(m+p-1))", size / record.stats["guarantee"]
    if n:
        return "size/sqrt(n)", size / math.sqrt(n)
    return "", None


AGGREGATE_FIELDS = ["family", "size_param", "alg", "runs", "errors", "n", "median_size",
                    "mean_size", "median_ratio_lb", "median_true_ratio", "fit", "median_fit"]


def run_bench(spec: dict, progress=None) -> tuple[list[dict], list[dict]]:
    """Execute a sweep; returns (record rows, aggregate rows).

    ``spec = {"experiments": [{"family", "sizes", "algorithms", "seeds",
    "params", "solver_params", "exact_opt"}]}``. Rows are produced in sweep
    order; a failing row is recorded with an ``error`` field and the sweep
    continues.
    """
    rows: list[dict] = []
    aggregates: list[dict] = []
    for exp in spec.get("experiments", []):
        family = exp["family"]
        size_key = SIZE_PARAM.get(family, "n")
        seeds = exp.get("seeds", [0])
        for size in exp.get("sizes", []):
            per_alg: dict[str, list] = {alg: [] for alg in exp.get("algorithms", [])}
            errors = {alg: 0 for alg in per_alg}
            for seed in seeds:
                params = {**exp.get("params", {}), size_key: size}
                if family in SEEDED_FAMILIES:
                    params["seed"] = seed
                try:
                    inst = make_instance(family, params)
                except Exception as exc:  # noqa: BLE001 - recorded, sweep continues
                    for alg in per_alg:
                        errors[alg] += 1
                        rows.append({"family": family, "params": params, "seed": seed,
                                     "alg": alg, "error": str(exc)})
                    continue
                opt = None
                if exp.get("exact_opt") and inst.kind == "points":
                    exact = exact_gpss(inst.points, int(exp.get("node_budget", 1_000_000)))
                    if exact.bound_source == "exact":
                        opt = exact.size
                for alg in per_alg:
                    try:
                        _, record = solve(inst, alg, exp.get("solver_params", {}), seed, opt)
                    except Exception as exc:  # noqa: BLE001
                        errors[alg] += 1
                        rows.append({"family": family, "params": params, "seed": seed,
                                     "alg": alg, "error": str(exc)})
                        continue
                    per_alg[alg].append(record)
                    rows.append(record.to_dict())
                    if progress:
                        progress(record)
            for alg, records in per_alg.items():
                aggregates.append(_aggregate(family, size, alg, records, errors[alg]))
    return rows, aggregates


def _median(values):
    values = [v for v in values if v is not None]
    return statistics.median(values) if values else None


def _aggregate(family, size, alg, records, errors) -> dict:
    fits = [fit_constant(alg, r) for r in records]
    true_ratios = [float(r.true_ratio) if r.true_ratio is not None else None for r in records]
    return {
        "family": family,
        "size_param": size,
        "alg": alg,
        "runs": len(records),
        "errors": errors,
        "n": records[0].n if records else "",
        "median_size": _median([r.size for r in records]) if records else "",
        "mean_size": statistics.fmean([r.size for r in records]) if records else "",
        "median_ratio_lb": _median([float(r.ratio_lb) for r in records]) if records else "",
        "median_true_ratio": _median(true_ratios) if records else "",
        "fit": fits[0][0] if fits else "",
        "median_fit": _median([f[1] for f in fits]) if fits else "",
    }


def aggregates_to_csv(aggregates: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=AGGREGATE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in aggregates:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in AGGREGATE_FIELDS})
    return buf.getvalue()
