"""Triangle counting: exact counters, independent edge sparsification with
the t'/p^3 estimator, an adaptive doubling search for the sampling rate,
and sampling baselines, behind a benchmark CLI."""

from .adaptive import (
    AdaptiveReport,
    Batch,
    ConditionReport,
    batch_spread,
    check_conditions,
    default_p0,
    doubling_search,
    recommend_p,
    trial_seed,
)
from .baselines import (
    SampleBudget,
    buriol_budget,
    buriol_sample,
    naive_budget,
    naive_sample,
)
from .bench import ExperimentRecord, SpeedupSummary, expected_speedup
from .exact import (
    TriangleStats,
    TripleCensus,
    connected_triples,
    count_brute_force,
    count_edge_iterator,
    count_node_iterator,
    count_triangles,
    transitivity,
    triangle_edge_positions,
    triple_census,
)
from .generators import book, complete, generate, gnp, weighted_book
from .graph import (
    EdgeListFormatError,
    Graph,
    GraphStats,
    load_edge_list,
    stats,
    write_edge_list,
)
from .sparsify import (
    Estimate,
    SparsifyParams,
    WeightedEstimate,
    count_weighted_triangles,
    estimate_triangles,
    estimate_weighted_triangles,
    sparsify,
    survival_mask,
    weighted_sparsify,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveReport",
    "Batch",
    "ConditionReport",
    "EdgeListFormatError",
    "Estimate",
    "ExperimentRecord",
    "Graph",
    "GraphStats",
    "SampleBudget",
    "SparsifyParams",
    "SpeedupSummary",
    "TriangleStats",
    "TripleCensus",
    "WeightedEstimate",
    "batch_spread",
    "book",
    "buriol_budget",
    "buriol_sample",
    "check_conditions",
    "complete",
    "connected_triples",
    "count_brute_force",
    "count_edge_iterator",
    "count_node_iterator",
    "count_triangles",
    "count_weighted_triangles",
    "default_p0",
    "doubling_search",
    "estimate_triangles",
    "estimate_weighted_triangles",
    "expected_speedup",
    "generate",
    "gnp",
    "load_edge_list",
    "naive_budget",
    "naive_sample",
    "recommend_p",
    "sparsify",
    "stats",
    "survival_mask",
    "transitivity",
    "trial_seed",
    "triangle_edge_positions",
    "triple_census",
    "weighted_book",
    "weighted_sparsify",
    "write_edge_list",
]
