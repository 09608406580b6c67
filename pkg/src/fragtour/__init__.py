"""Greedy fragment tour construction for the traveling salesman problem.

Constructive heuristics that grow path fragments (arc-greedy shortest-first,
nearest neighbor, double-ended nearest neighbor, ordered-greedy) on top of
three interchangeable subtour elimination trackers, with a TSPLIB ingestion
layer, exact small-instance oracles, a timing harness and a CLI.
"""

__version__ = "0.1.0"

from .bench import BenchRecord, parse_csv, render_table, run_bench
from .edges import Arc, Mode, ModeError, build_sorted_edges, default_mode
from .estimators import (
    ArcGreedyTour,
    NearestNeighborTour,
    OrderedGreedyTour,
    as_instance,
    check_weight_matrix,
)
from .heuristics import (
    ConstructionError,
    InfeasibleOrderError,
    Provenance,
    Tour,
    arc_greedy,
    distance_sum_order,
    double_ended_nn,
    identity_order,
    nearest_neighbor,
    ordered_greedy,
    random_order,
    tour_to_record,
    tour_to_text,
)
from .instances import (
    Instance,
    InvalidTourError,
    ParseError,
    load_instance,
    parse_instance,
    tour_cost,
)
from .oracle import (
    VerificationReport,
    brute_force_optimal,
    canonical_cycle,
    random_asymmetric_instance,
    random_euclidean_instance,
    validate_tour,
    verify_equivalence,
)
from .trackers import (
    ExhaustiveLoopTracker,
    GreedyTracker,
    MultipleFragmentTracker,
    SubtourTracker,
    Verdict,
    make_tracker,
)

__all__ = [
    "Arc",
    "ArcGreedyTour",
    "BenchRecord",
    "ConstructionError",
    "ExhaustiveLoopTracker",
    "GreedyTracker",
    "InfeasibleOrderError",
    "Instance",
    "InvalidTourError",
    "Mode",
    "ModeError",
    "MultipleFragmentTracker",
    "NearestNeighborTour",
    "OrderedGreedyTour",
    "ParseError",
    "Provenance",
    "SubtourTracker",
    "Tour",
    "VerificationReport",
    "Verdict",
    "arc_greedy",
    "as_instance",
    "brute_force_optimal",
    "build_sorted_edges",
    "canonical_cycle",
    "check_weight_matrix",
    "default_mode",
    "distance_sum_order",
    "double_ended_nn",
    "identity_order",
    "load_instance",
    "make_tracker",
    "nearest_neighbor",
    "ordered_greedy",
    "parse_csv",
    "parse_instance",
    "random_asymmetric_instance",
    "random_euclidean_instance",
    "random_order",
    "render_table",
    "run_bench",
    "tour_cost",
    "tour_to_record",
    "tour_to_text",
    "validate_tour",
    "verify_equivalence",
]
