from .euler import (
    euler_bound,
    euler_bound_tight,
    euler_surrogate_times,
    euler_surrogate_trace,
    exact_euler_surrogate_mean,
)
from .graphs import (
    WeightedGraph,
    dijkstra,
    kruskal,
    load_graph,
    parse_graph,
    random_connected_graph,
    total_shortest_path_weight,
)
from .mst import (
    GapDriftReport,
    check_gap_drift,
    is_spanning_tree,
    maximum_spanning_tree,
    mst_batch,
    mst_bound,
    mst_drift_check,
    mst_fitness,
    mst_run,
    random_spanning_tree,
)
from .sssp import (
    SsspDriftDiagnostic,
    ratio_diagnostic_from_stats,
    final_distances,
    optimal_predecessors,
    sssp_batch,
    sssp_bound,
    sssp_drift_check,
    sssp_fitness,
    sssp_run,
)

__all__ = [
    "GapDriftReport",
    "SsspDriftDiagnostic",
    "WeightedGraph",
    "check_gap_drift",
    "dijkstra",
    "euler_bound",
    "euler_bound_tight",
    "euler_surrogate_times",
    "euler_surrogate_trace",
    "exact_euler_surrogate_mean",
    "final_distances",
    "is_spanning_tree",
    "kruskal",
    "load_graph",
    "maximum_spanning_tree",
    "mst_batch",
    "mst_bound",
    "mst_drift_check",
    "mst_fitness",
    "mst_run",
    "optimal_predecessors",
    "parse_graph",
    "random_connected_graph",
    "random_spanning_tree",
    "ratio_diagnostic_from_stats",
    "sssp_batch",
    "sssp_bound",
    "sssp_drift_check",
    "sssp_fitness",
    "sssp_run",
    "total_shortest_path_weight",
]
