"""Query answering: pruning rules, bidirectional search, baselines."""

import random

import pytest

from preach import (IndexConfig, PruneResult, SearchScratch, Settled, bfs_query,
                    bidir_bfs_query, build_index, prune_backward, prune_forward,
                    query, reachable_set)
from preach._kernel import HAVE_KERNEL
from preach.search import _query_python

from conftest import graph_from_edges, random_digraph, truth_matrix


@pytest.fixture
def d4_index(d4):
    return build_index(d4)


def test_prune_forward_examples(d4_index):
    assert prune_forward(d4_index, 1, 2) is PruneResult.PRUNE
    assert prune_forward(d4_index, 0, 3) is PruneResult.POSITIVE_STOP
    # Node 2's stored subtree interval [3, 3] catches the target.
    assert prune_forward(d4_index, 2, 3) is PruneResult.POSITIVE_STOP


def test_prune_backward_examples(d4_index):
    assert prune_backward(d4_index, 3, 0) is PruneResult.POSITIVE_STOP
    assert prune_backward(d4_index, 1, 2) is PruneResult.PRUNE
    for v in range(4):
        assert prune_backward(d4_index, v, v) is PruneResult.POSITIVE_STOP


def test_d4_queries(d4_index):
    scratch = SearchScratch.for_index(d4_index)
    assert query(d4_index, scratch, 0, 3)[0] is True
    assert query(d4_index, scratch, 3, 0)[0] is False
    assert query(d4_index, scratch, 1, 2)[0] is False
    for v in range(4):
        result, stats = query(d4_index, scratch, v, v)
        assert result is True
        assert stats.settled_by is Settled.S_EQ_T


def test_two_cycle_queries():
    idx = build_index(graph_from_edges(2, [(0, 1), (1, 0)]))
    scratch = SearchScratch.for_index(idx)
    assert query(idx, scratch, 0, 1)[0] is True
    assert query(idx, scratch, 1, 0)[0] is True


def test_invalid_node_id(d4_index):
    scratch = SearchScratch.for_index(d4_index)
    with pytest.raises(ValueError):
        query(d4_index, scratch, 0, 4)
    with pytest.raises(ValueError):
        query(d4_index, scratch, -1, 0)


def test_scratch_reuse_is_stable(d4_index):
    scratch = SearchScratch.for_index(d4_index)
    first = query(d4_index, scratch, 0, 3)
    second = query(d4_index, scratch, 0, 3)
    assert first == second


def test_stats_consistency():
    rng = random.Random(3)
    g = random_digraph(rng, 40, 120)
    idx = build_index(g)
    scratch = SearchScratch.for_index(idx)
    truth = truth_matrix(g)
    for s in range(g.n):
        for t in range(g.n):
            result, stats = query(idx, scratch, s, t)
            assert result == bool(truth[s][t])
            assert result == stats.result
            if stats.settled_by is Settled.EXHAUSTED:
                assert result is False
            if stats.settled_by in (Settled.FULL_INTERVAL, Settled.MEET):
                assert result is True
            assert stats.visited_fwd <= idx.dag.dag.n
            assert stats.visited_bwd <= idx.dag.dag.n


@pytest.mark.skipif(not HAVE_KERNEL, reason="compiled kernel unavailable")
def test_kernel_matches_interpreted_path():
    rng = random.Random(29)
    for trial in range(8):
        g = random_digraph(rng, rng.randint(2, 32), rng.randint(0, 100))
        for cfg in IndexConfig.all_combinations():
            idx = build_index(g, cfg)
            scratch = SearchScratch.for_index(idx)
            for s in range(g.n):
                for t in range(g.n):
                    assert query(idx, scratch, s, t) == \
                        _query_python(idx, scratch, s, t), (trial, cfg, s, t)


def test_all_configs_agree_with_truth():
    rng = random.Random(51)
    g = random_digraph(rng, 30, 90)
    truth = truth_matrix(g)
    for cfg in IndexConfig.all_combinations():
        idx = build_index(g, cfg)
        scratch = SearchScratch.for_index(idx)
        for s in range(g.n):
            for t in range(g.n):
                assert query(idx, scratch, s, t)[0] == bool(truth[s][t]), (cfg, s, t)


def test_bfs_baseline(d4):
    assert bfs_query(d4, 0, 3) is True
    assert bfs_query(d4, 3, 0) is False
    assert bfs_query(d4, 2, 2) is True


def test_bidir_baseline_early_exhaustion():
    g = graph_from_edges(3, [(0, 1), (1, 2)])
    scratch = SearchScratch.for_graph(g)
    result, stats = bidir_bfs_query(g, scratch, 2, 0)
    assert result is False
    # Node 2 has no successors, so the forward side dies immediately.
    assert stats.visited_fwd <= 1


def test_bidir_baseline_agrees_with_truth():
    rng = random.Random(77)
    g = random_digraph(rng, 35, 110)
    truth = truth_matrix(g)
    scratch = SearchScratch.for_graph(g)
    for s in range(g.n):
        for t in range(g.n):
            assert bidir_bfs_query(g, scratch, s, t)[0] == bool(truth[s][t])


def test_reachable_set(d4):
    assert reachable_set(d4, 0) == {0, 1, 2, 3}
    assert reachable_set(d4, 3) == {3}
    assert reachable_set(d4, 1) == {1, 3}
