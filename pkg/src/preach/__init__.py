"""Pruned reachability contraction hierarchies.

A lightweight reachability index for directed graphs: the input is
condensed into its component dag, which gets a source/sink contraction
ordering, forward and backward topological levels, and interval labels
from one DFS per direction. Queries run a pruned bidirectional search
over the rank-partitioned edges.
"""

from .bench import (ALL_ALGORITHMS, BenchConfig, BenchRecord, ScalingFamily,
                    run_bench, run_distribution, run_scaling)
from .condense import CondensedDag, condense
from .dfslabels import DfsLabels, compute_dfs_labels
from .errors import (CycleError, GraphParseError, IndexFormatError,
                     PreachError, WorkloadError)
from .generate import (Workload, WorkloadKind, gen_kronecker_dag,
                       gen_random_dag, gen_workload)
from .graph import Graph, GraphFormat, load_graph, write_graph
from .index import (IndexConfig, ReachIndex, build_index, index_footprint,
                    index_resident_bytes, load_index, save_index)
from .levels import Direction, LevelData, compute_level_data, compute_levels
from .rch import RchPartition, compute_rch
from .search import (PruneResult, QueryStats, SearchScratch, Settled,
                     bfs_query, bidir_bfs_query, prune_backward,
                     prune_forward, query, reachable_set)
from .stats import GraphStats, graph_stats

__all__ = [
    "ALL_ALGORITHMS", "BenchConfig", "BenchRecord", "CondensedDag",
    "CycleError", "DfsLabels", "Direction", "Graph", "GraphFormat",
    "GraphParseError", "GraphStats", "IndexConfig", "IndexFormatError",
    "LevelData", "PreachError", "PruneResult", "QueryStats", "RchPartition",
    "ReachIndex", "ScalingFamily", "SearchScratch", "Settled", "Workload",
    "WorkloadError", "WorkloadKind", "bfs_query", "bidir_bfs_query",
    "build_index", "compute_dfs_labels", "compute_level_data",
    "compute_levels", "compute_rch", "condense", "gen_kronecker_dag",
    "gen_random_dag", "gen_workload", "graph_stats", "index_footprint",
    "index_resident_bytes", "load_graph", "load_index", "prune_backward",
    "prune_forward", "query", "reachable_set", "run_bench",
    "run_distribution", "run_scaling", "save_index", "write_graph",
]

__version__ = "0.1.0"
