"""Instance and workload generators: determinism and class correctness."""

import pytest

from preach import (WorkloadError, WorkloadKind, gen_kronecker_dag,
                    gen_random_dag, gen_workload, reachable_set)

from conftest import graph_from_edges


def test_random_dag_edges_point_upward():
    g = gen_random_dag(500, 2000, seed=7)
    assert all(u < v for u, v in g.edges().tolist())


def test_random_dag_deterministic():
    assert gen_random_dag(100, 300, seed=5) == gen_random_dag(100, 300, seed=5)
    assert gen_random_dag(100, 300, seed=5) != gen_random_dag(100, 300, seed=6)


def test_random_dag_density_after_dedup():
    g = gen_random_dag(10_000, 50_000, seed=1)
    assert 4.9 <= g.m / g.n <= 5.0


def test_random_dag_rejects_zero_nodes():
    with pytest.raises(ValueError):
        gen_random_dag(0, 0, seed=0)


def test_kronecker_shape_and_determinism():
    g = gen_kronecker_dag(12, 16, seed=3)
    assert g.n == 2 ** 12
    assert g.m < 16 * 2 ** 12
    assert all(u < v for u, v in g.edges().tolist())
    assert g == gen_kronecker_dag(12, 16, seed=3)


def test_kronecker_rejects_bad_skew():
    with pytest.raises(ValueError):
        gen_kronecker_dag(8, 16, seed=0, skew=(0.5, 0.5, 0.5, 0.5))


def test_single_edge_positive_workload():
    g = graph_from_edges(2, [(0, 1)])
    wl = gen_workload(g, WorkloadKind.POSITIVE, 10, seed=0)
    assert wl.pairs == [(0, 1)] * 10


def test_d4_negative_workload(d4):
    wl = gen_workload(d4, WorkloadKind.NEGATIVE, 50, seed=2)
    for s, t in wl.pairs:
        assert t not in reachable_set(d4, s), (s, t)


def test_d4_random_workload(d4):
    wl = gen_workload(d4, WorkloadKind.RANDOM, 50, seed=2)
    assert all(s != t for s, t in wl.pairs)


def test_workload_class_correctness():
    g = gen_random_dag(300, 900, seed=9)
    reach = {}

    def reaches(s, t):
        if s not in reach:
            reach[s] = reachable_set(g, s)
        return t in reach[s]

    pos = gen_workload(g, WorkloadKind.POSITIVE, 200, seed=4)
    assert all(s != t and reaches(s, t) for s, t in pos.pairs)
    neg = gen_workload(g, WorkloadKind.NEGATIVE, 200, seed=4)
    assert all(not reaches(s, t) for s, t in neg.pairs)


def test_workload_determinism():
    g = gen_random_dag(200, 600, seed=1)
    a = gen_workload(g, WorkloadKind.POSITIVE, 100, seed=8)
    b = gen_workload(g, WorkloadKind.POSITIVE, 100, seed=8)
    assert a.pairs == b.pairs


def test_infeasible_positive_workload():
    g = graph_from_edges(3, [])
    with pytest.raises(WorkloadError):
        gen_workload(g, WorkloadKind.POSITIVE, 5, seed=0)


def test_infeasible_negative_workload():
    # Every ordered pair is reachable in a 2-cycle.
    g = graph_from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(WorkloadError):
        gen_workload(g, WorkloadKind.NEGATIVE, 5, seed=0)
