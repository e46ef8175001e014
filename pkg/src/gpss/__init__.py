"""Approximation algorithms for selecting points in general position."""
from .errors import *  # noqa: F401,F403
from .geometry import (
    Coord,
    Incidences,
    LineKey,
    Point,
    PointSet,
    as_line_set,
    as_point_set,
    canonical_line,
    collinear,
    incidences,
    is_general_position,
    line_through,
    orientation,
    squared_distance,
)
from .primes import is_prime, next_prime_at_least
from .structure import (
    CoverCertificate,
    DensityReport,
    LineProfile,
    arrangement_vertices,
    collinear_triples,
    density_report,
    greedy_line_cover,
    is_alpha_dense,
    is_generic,
    alpha_upper,
    line_profile,
    max_collinear,
)
from .generators import (
    bundle_arrangement,
    degenerate_arrangement,
    dense_lattice,
    dense_side,
    erdos_class,
    erdos_class_index,
    grid,
    grid_like,
    parallels_with_transversal,
    random_lines,
)
from .solvers import SolveResult, dense_lattice_gpss, erdos_buckets, exact_gpss, greedy_gpss
from .sampling import (
    SamplingPlan,
    choose_k,
    make_general_position,
    run_trials,
    sample_delete_arrangement,
    sample_delete_gridlike,
)
from .io import Instance, emit_instance, parse_instance, read_instance
from .harness import ExperimentRecord, make_instance, run_bench, solve

__version__ = "0.1.0"
