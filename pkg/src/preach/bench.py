"""Benchmark harness: timed query batches, distributions, scaling sweeps.

Workloads are generated and pinned before any clock starts. Every
algorithm in a run answers the identical pair list and the harness
aborts on the first boolean disagreement, so timing runs double as a
cross-validation of the implementations against each other.
"""

from __future__ import annotations

import concurrent.futures
import enum
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import PreachError
from .generate import Workload, WorkloadKind, gen_random_dag, gen_workload
from .graph import Graph, load_graph
from .index import IndexConfig, ReachIndex, build_index, index_footprint
from .search import SearchScratch, bfs_query, bidir_bfs_query, query

# Index-backed algorithms map to heuristic-flag subsets; the two BFS
# baselines need no preprocessing at all.
INDEX_ALGORITHMS: dict[str, IndexConfig] = {
    "preach": IndexConfig(use_rch=True, use_levels=True, use_dfs=True),
    "rch_only": IndexConfig(use_rch=True, use_levels=False, use_dfs=False),
    "levels_only": IndexConfig(use_rch=False, use_levels=True, use_dfs=False),
    "dfs_only": IndexConfig(use_rch=False, use_levels=False, use_dfs=True),
}
BASELINE_ALGORITHMS = ("bfs", "bidir_bfs")
ALL_ALGORITHMS = tuple(INDEX_ALGORITHMS) + BASELINE_ALGORITHMS

CSV_HEADER = ("graph,algo,kind,count,mean_ns,median_ns,p99_ns,max_ns,"
              "mean_visited,construction_ms,footprint_bytes")


class ScalingFamily(enum.Enum):
    DENSITY = "density"
    SIZE = "size"


@dataclass
class BenchConfig:
    graph: str | Path | Graph
    algorithms: list[str] = field(default_factory=lambda: list(ALL_ALGORITHMS))
    kind: WorkloadKind = WorkloadKind.RANDOM
    count: int = 10_000
    seed: int = 0
    repetitions: int = 1
    output: str | Path | None = None
    threads: int = 1
    name: str = ""

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not self.algorithms:
            raise ValueError("need at least one algorithm")
        for algo in self.algorithms:
            if algo not in ALL_ALGORITHMS:
                raise ValueError(f"unknown algorithm {algo!r}")
        if not self.name:
            if isinstance(self.graph, Graph):
                self.name = f"graph_n{self.graph.n}"
            else:
                self.name = Path(self.graph).stem


@dataclass
class BenchRecord:
    algorithm: str
    kind: WorkloadKind
    count: int
    mean_ns: float
    median_ns: float
    p99_ns: float
    max_ns: float
    mean_visited: float
    construction_ms: float
    footprint_bytes: int

    def csv_row(self, graph_name: str) -> str:
        return (f"{graph_name},{self.algorithm},{self.kind.value},{self.count},"
                f"{self.mean_ns:.1f},{self.median_ns:.1f},{self.p99_ns:.1f},"
                f"{self.max_ns:.1f},{self.mean_visited:.2f},"
                f"{self.construction_ms:.3f},{self.footprint_bytes}")


def _resolve_graph(config: BenchConfig) -> Graph:
    if isinstance(config.graph, Graph):
        return config.graph
    return load_graph(config.graph)


def _build_timed(graph: Graph, cfg: IndexConfig, reps: int) -> tuple[ReachIndex, float]:
    """Build the index reps times, keep the last, report the fastest run."""
    best_ms = float("inf")
    index = None
    for _ in range(max(1, reps)):
        start = time.perf_counter_ns()
        index = build_index(graph, cfg)
        best_ms = min(best_ms, (time.perf_counter_ns() - start) / 1e6)
    return index, best_ms


def _answer_fn(algorithm: str, graph: Graph, index: ReachIndex | None):
    """Per-algorithm closure: (scratch, s, t) -> (bool, visited count)."""
    if algorithm == "bfs":
        def run(scratch, s, t):
            return bfs_query(graph, s, t), 0
    elif algorithm == "bidir_bfs":
        def run(scratch, s, t):
            result, st = bidir_bfs_query(graph, scratch, s, t)
            return result, st.visited_fwd + st.visited_bwd
    else:
        def run(scratch, s, t):
            result, st = query(index, scratch, s, t)
            return result, st.visited_fwd + st.visited_bwd
    return run


def _scratch_for(algorithm: str, graph: Graph, index: ReachIndex | None) -> SearchScratch:
    if algorithm in BASELINE_ALGORITHMS:
        return SearchScratch.for_graph(graph)
    return SearchScratch.for_index(index)


def _run_algorithm(algorithm: str, graph: Graph, workload: Workload,
                   reps: int, threads: int):
    index = None
    construction_ms = 0.0
    footprint = 0
    if algorithm in INDEX_ALGORITHMS:
        index, construction_ms = _build_timed(graph, INDEX_ALGORITHMS[algorithm], reps)
        footprint = index_footprint(index)
    run = _answer_fn(algorithm, graph, index)
    pairs = workload.pairs
    count = len(pairs)

    if threads > 1:
        # Throughput mode: shard the workload, per-query latency disabled.
        shards = [pairs[i::threads] for i in range(threads)]
        results_by_shard: list[list[bool]] = [[] for _ in range(threads)]
        visited_total = 0

        def worker(shard_id: int) -> int:
            scratch = _scratch_for(algorithm, graph, index)
            vis = 0
            out = results_by_shard[shard_id]
            for s, t in shards[shard_id]:
                result, v = run(scratch, s, t)
                out.append(result)
                vis += v
            return vis

        run(_scratch_for(algorithm, graph, index), *pairs[0])  # untimed warm-up
        batch_start = time.perf_counter_ns()
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            visited_total = sum(pool.map(worker, range(threads)))
        batch_ns = time.perf_counter_ns() - batch_start
        results = [False] * count
        for shard_id, shard_results in enumerate(results_by_shard):
            results[shard_id::threads] = shard_results
        record = BenchRecord(algorithm, workload.kind, count,
                             mean_ns=batch_ns / count,
                             median_ns=0.0, p99_ns=0.0, max_ns=0.0,
                             mean_visited=visited_total / count,
                             construction_ms=construction_ms,
                             footprint_bytes=footprint)
        return record, results, None

    scratch = _scratch_for(algorithm, graph, index)
    clock = time.perf_counter_ns
    # One untimed call to pay any one-time costs (lazy caches, compiled
    # code lookup) outside the measured region.
    run(scratch, *pairs[0])

    # The mean comes from one clock pair around the whole batch; a
    # per-query clock would add its own overhead to every sample.
    results = []
    visited_total = 0
    batch_start = clock()
    for s, t in pairs:
        result, v = run(scratch, s, t)
        results.append(result)
        visited_total += v
    batch_ns = clock() - batch_start

    # Percentiles need per-query samples, so those come from a second,
    # individually clocked pass over the same pairs.
    times = []
    for s, t in pairs:
        q0 = clock()
        run(scratch, s, t)
        times.append(clock() - q0)
    times.sort()
    record = BenchRecord(
        algorithm, workload.kind, count,
        mean_ns=batch_ns / count,
        median_ns=float(statistics.median(times)),
        p99_ns=float(times[min(count - 1, int(0.99 * count))]),
        max_ns=float(times[-1]),
        mean_visited=visited_total / count,
        construction_ms=construction_ms,
        footprint_bytes=footprint,
    )
    return record, results, times


def run_bench(config: BenchConfig) -> list[BenchRecord]:
    """Run every configured algorithm over one pinned workload."""
    graph = _resolve_graph(config)
    workload = gen_workload(graph, config.kind, config.count, config.seed)
    records: list[BenchRecord] = []
    reference: list[bool] | None = None
    reference_algo = ""
    for algorithm in config.algorithms:
        record, results, _ = _run_algorithm(algorithm, graph, workload,
                                            config.repetitions, config.threads)
        if reference is None:
            reference, reference_algo = results, algorithm
        elif results != reference:
            bad = next(i for i, (x, y) in enumerate(zip(results, reference)) if x != y)
            s, t = workload.pairs[bad]
            raise PreachError(
                f"result mismatch on pair ({s}, {t}): "
                f"{algorithm} says {results[bad]}, {reference_algo} says {reference[bad]}")
        records.append(record)
    if config.output is not None:
        with open(config.output, "w", encoding="ascii") as fh:
            fh.write(CSV_HEADER + "\n")
            for record in records:
                fh.write(record.csv_row(config.name) + "\n")
    return records


def run_distribution(config: BenchConfig) -> list[int]:
    """Per-query times for one algorithm, written as a plottable CSV."""
    if len(config.algorithms) != 1:
        raise ValueError("distribution runs time exactly one algorithm")
    graph = _resolve_graph(config)
    workload = gen_workload(graph, config.kind, config.count, config.seed)
    _, _, times = _run_algorithm(config.algorithms[0], graph, workload,
                                 config.repetitions, threads=1)
    if config.output is not None:
        with open(config.output, "w", encoding="ascii") as fh:
            fh.write("query_index,ns\n")
            for i, ns in enumerate(times):
                fh.write(f"{i},{ns}\n")
    med = statistics.median(times)
    ratio = max(times) / med if med else float("inf")
    print(f"{config.name} {config.algorithms[0]} {config.kind.value}: "
          f"median={med:.0f}ns max={max(times)}ns max/median={ratio:.1f}")
    return times


SCALING_CSV_HEADER = "family,n,m,construction_ns_per_edge,mean_query_ns"


@dataclass
class ScalingPoint:
    family: ScalingFamily
    n: int
    m: int
    construction_ns_per_edge: float
    mean_query_ns: float
    error: str = ""

    def csv_row(self) -> str:
        if self.error:
            return f"{self.family.value},{self.n},{self.m},nan,nan"
        return (f"{self.family.value},{self.n},{self.m},"
                f"{self.construction_ns_per_edge:.2f},{self.mean_query_ns:.1f}")


def run_scaling(family: ScalingFamily, seed: int = 0, *,
                n: int = 100_000,
                density_sweep: tuple[int, ...] = (2, 4, 8, 16, 32, 64),
                sizes: tuple[int, ...] = (10**4, 10**5, 10**6),
                density: int = 8,
                query_count: int = 1000,
                output: str | Path | None = None) -> list[ScalingPoint]:
    """Construction ns/edge and mean random-query ns over a parameter sweep.

    DENSITY fixes n and sweeps m/n; SIZE fixes m/n and sweeps n. A point
    that fails (e.g. out of memory) is reported and the sweep continues.
    """
    if family is ScalingFamily.DENSITY:
        targets = [(n, d * n) for d in density_sweep]
    else:
        targets = [(size, density * size) for size in sizes]
    points: list[ScalingPoint] = []
    for point_n, point_m in targets:
        try:
            graph = gen_random_dag(point_n, point_m, seed)
            start = time.perf_counter_ns()
            index = build_index(graph)
            construction_ns = time.perf_counter_ns() - start
            workload = gen_workload(graph, WorkloadKind.RANDOM, query_count, seed)
            scratch = SearchScratch.for_index(index)
            query(index, scratch, *workload.pairs[0])  # untimed warm-up
            q0 = time.perf_counter_ns()
            for s, t in workload.pairs:
                query(index, scratch, s, t)
            query_ns = time.perf_counter_ns() - q0
            points.append(ScalingPoint(
                family, graph.n, graph.m,
                construction_ns_per_edge=construction_ns / max(1, graph.m),
                mean_query_ns=query_ns / query_count))
        except (MemoryError, OverflowError, PreachError) as exc:
            points.append(ScalingPoint(family, point_n, point_m, 0.0, 0.0,
                                       error=f"{type(exc).__name__}: {exc}"))
    if output is not None:
        with open(output, "w", encoding="ascii") as fh:
            fh.write(SCALING_CSV_HEADER + "\n")
            for point in points:
                fh.write(point.csv_row() + "\n")
    return points
