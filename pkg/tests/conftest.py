"""Shared fixtures: tiny hand-traceable graphs and random-instance helpers."""

import random

import numpy as np
import pytest

from preach import Graph
from preach.search import reachable_mask

D4_EDGES = [(0, 1), (0, 2), (1, 3), (2, 3)]
G2_EDGES = [(0, 1), (0, 2), (2, 3)]


def graph_from_edges(n, edges):
    heads = np.array([e[0] for e in edges], dtype=np.int64)
    tails = np.array([e[1] for e in edges], dtype=np.int64)
    return Graph.from_edges(n, heads, tails)


def random_digraph(rng: random.Random, n: int, m: int) -> Graph:
    """Random simple digraph (cycles allowed) with at most m edges."""
    edges = set()
    limit = n * (n - 1)
    target = min(m, limit)
    while len(edges) < target:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((u, v))
    return graph_from_edges(n, sorted(edges))


def truth_matrix(graph: Graph) -> list:
    """Row s is the boolean reachability mask from s (brute force)."""
    return [reachable_mask(graph, s) for s in range(graph.n)]


@pytest.fixture
def d4():
    return graph_from_edges(4, D4_EDGES)


@pytest.fixture
def g2():
    return graph_from_edges(4, G2_EDGES)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import CRITERION_LINES
    except ImportError:
        return
    if CRITERION_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
