"""Acceptance gate: eight end-to-end criteria, one verdict line each.

Each test appends a single PASS or FAIL line to CRITERION_LINES, which
the terminal-summary hook in conftest prints after the run.
"""

import random
import time

import pytest

from preach import (BenchConfig, IndexConfig, ScalingFamily, SearchScratch,
                    WorkloadKind, build_index, gen_kronecker_dag,
                    gen_random_dag, gen_workload, index_footprint,
                    index_resident_bytes, query, run_bench, run_scaling,
                    save_index, write_graph)
from preach.bench import CSV_HEADER

from conftest import random_digraph, truth_matrix
from test_dfslabels import check_lemmas
from test_rch import check_replay, partition_edges

CRITERION_LINES = []


def _record(num, name, ok, detail):
    line = f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}, {detail}"
    CRITERION_LINES.append(line)
    assert ok, line


def test_criterion_1_oracle_equivalence():
    """200 random digraphs, n <= 64, five densities, all pairs, 8 configs."""
    start = time.perf_counter()
    rng = random.Random(1001)
    densities = [0.5, 1, 2, 4, 8]
    mismatches = 0
    graphs = 0
    for density in densities:
        for _ in range(40):
            n = rng.randint(2, 64)
            g = random_digraph(rng, n, max(1, round(density * n)))
            graphs += 1
            truth = truth_matrix(g)
            for cfg in IndexConfig.all_combinations():
                idx = build_index(g, cfg)
                scratch = SearchScratch.for_index(idx)
                for s in range(n):
                    row = truth[s]
                    for t in range(n):
                        if query(idx, scratch, s, t)[0] != bool(row[t]):
                            mismatches += 1
    elapsed = time.perf_counter() - start
    _record(1, "oracle equivalence",
            mismatches == 0 and elapsed < 60.0,
            f"{mismatches} mismatches over {graphs} graphs x 8 configs "
            f"in {elapsed:.1f}s")


def test_criterion_2_lemma_invariants():
    """Six preprocessing invariants on 50 random DAGs, both directions."""
    rng = random.Random(2002)
    violations = 0
    for trial in range(50):
        g = gen_random_dag(rng.randint(1, 256), rng.randint(0, 1024), seed=trial)
        idx = build_index(g)
        dag = idx.dag.dag
        truth = truth_matrix(dag)
        back_truth = [[truth[t][s] for t in range(dag.n)] for s in range(dag.n)]
        level = idx.levels.level.tolist()
        back = idx.levels.back_level.tolist()
        try:
            check_lemmas(dag, idx.fwd_labels, truth)
            check_lemmas(dag, idx.bwd_labels, back_truth)
        except AssertionError:
            violations += 1
        for u in range(dag.n):
            for v in range(dag.n):
                if u != v and truth[u][v]:
                    if not (level[u] < level[v] and back[u] > back[v]):
                        violations += 1
    _record(2, "lemma invariants", violations == 0,
            f"{violations} violations over 50 dags, both directions")


def test_criterion_3_rch_structure():
    """Order bijectivity, partition exactness, replay on generated DAGs."""
    rng = random.Random(3003)
    dags = [gen_random_dag(rng.randint(1, 400), rng.randint(0, 1600), seed=i)
            for i in range(15)]
    dags.append(gen_kronecker_dag(9, 4, seed=1))
    violations = 0
    for g in dags:
        idx = build_index(g)
        dag, rch = idx.dag.dag, idx.rch
        order = rch.order.tolist()
        if sorted(order) != list(range(1, dag.n + 1)):
            violations += 1
        if sorted(partition_edges(rch)) != sorted(map(tuple, dag.edges().tolist())):
            violations += 1
        try:
            check_replay(dag, order)
        except AssertionError:
            violations += 1
    _record(3, "rch structure", violations == 0,
            f"{violations} violations over {len(dags)} dags")


def test_criterion_4_footprint():
    """index_footprint is exactly 4m+64n; resident bytes within 1.25x."""
    rng = random.Random(4004)
    graphs = [random_digraph(rng, 50, 200),
              gen_random_dag(2000, 4000, seed=1),
              gen_random_dag(2000, 16000, seed=1),
              gen_kronecker_dag(10, 8, seed=2)]
    bad = 0
    worst = 0.0
    for g in graphs:
        idx = build_index(g)
        dag = idx.dag.dag
        model = 4 * dag.m + 64 * dag.n
        if index_footprint(idx) != model:
            bad += 1
        ratio = index_resident_bytes(idx) / model
        worst = max(worst, ratio)
        if ratio > 1.25:
            bad += 1
    _record(4, "footprint formula", bad == 0,
            f"{bad} violations, worst resident/model ratio {worst:.3f}")


SPEEDUP_SEED = 55
SPEEDUP_COUNT = 10_000


@pytest.fixture(scope="module")
def speedup_graph():
    return gen_random_dag(100_000, 500_000, seed=SPEEDUP_SEED)


def test_criterion_5_scaled_speedup(speedup_graph):
    """Mean-query-time speedup >= 5x over bidirectional BFS, both kinds."""
    start = time.perf_counter()
    ratios = {}
    for kind in (WorkloadKind.POSITIVE, WorkloadKind.NEGATIVE):
        config = BenchConfig(graph=speedup_graph,
                             algorithms=["preach", "bidir_bfs"], kind=kind,
                             count=SPEEDUP_COUNT, seed=SPEEDUP_SEED)
        preach_rec, bidir_rec = run_bench(config)
        ratios[kind.value] = bidir_rec.mean_ns / preach_rec.mean_ns
    elapsed = time.perf_counter() - start
    ok = all(r >= 5.0 for r in ratios.values()) and elapsed < 300.0
    _record(5, "scaled speedup", ok,
            f"positive {ratios['positive']:.1f}x, "
            f"negative {ratios['negative']:.1f}x in {elapsed:.0f}s")


def test_criterion_6_near_linear_construction():
    """Construction ns/edge at n=1e6 is < 3x the n=1e4 value."""
    points = run_scaling(ScalingFamily.SIZE, seed=66,
                         sizes=(10 ** 4, 10 ** 5, 10 ** 6), density=8,
                         query_count=200)
    assert all(not p.error for p in points), [p.error for p in points]
    ratio = points[-1].construction_ns_per_edge / points[0].construction_ns_per_edge
    _record(6, "near-linear construction", ratio < 3.0,
            f"ns/edge ratio n=1e6 vs n=1e4 is {ratio:.2f}")


def test_criterion_7_monotone_pruning(speedup_graph):
    """Full pruning never visits more than RCH-only on negative queries."""
    workload = gen_workload(speedup_graph, WorkloadKind.NEGATIVE,
                            SPEEDUP_COUNT, seed=SPEEDUP_SEED)
    full = build_index(speedup_graph, IndexConfig(True, True, True))
    rch_only = build_index(speedup_graph, IndexConfig(True, False, False))
    s_full = SearchScratch.for_index(full)
    s_rch = SearchScratch.for_index(rch_only)
    violations = 0
    for s, t in workload.pairs:
        _, a = query(full, s_full, s, t)
        _, b = query(rch_only, s_rch, s, t)
        if a.visited_fwd + a.visited_bwd > b.visited_fwd + b.visited_bwd:
            violations += 1
    _record(7, "monotone pruning", violations == 0,
            f"{violations} violations over {len(workload.pairs)} negative queries")


def test_criterion_8_determinism(tmp_path):
    """Two generate-build-bench pipelines with one seed match byte for byte."""

    def pipeline(tag):
        g = gen_random_dag(2000, 8000, seed=88)
        gpath = tmp_path / f"graph_{tag}.txt"
        write_graph(g, gpath)
        idx = build_index(g)
        ipath = tmp_path / f"index_{tag}.bin"
        save_index(idx, ipath)
        config = BenchConfig(graph=g, algorithms=["preach", "bidir_bfs"],
                             kind=WorkloadKind.RANDOM, count=500, seed=88,
                             name="det")
        rows = [r.csv_row("det").split(",") for r in run_bench(config)]
        header = CSV_HEADER.split(",")
        timing = {"mean_ns", "median_ns", "p99_ns", "max_ns", "construction_ms"}
        stable = [[val for col, val in zip(header, row) if col not in timing]
                  for row in rows]
        return gpath.read_bytes(), ipath.read_bytes(), stable

    ok = pipeline("a") == pipeline("b")
    _record(8, "determinism", ok,
            "graph bytes, index bytes and non-timing csv columns identical"
            if ok else "pipeline outputs differ")
