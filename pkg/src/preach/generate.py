"""Deterministic instance and workload generation.

All generators are pure functions of their arguments; the PRNG is
numpy's default PCG64 seeded with the given 64-bit seed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import WorkloadError
from .graph import Graph
from .search import reachable_mask

GRAPH500_SKEW = (0.57, 0.19, 0.19, 0.05)


class WorkloadKind(enum.Enum):
    RANDOM = "random"
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Workload:
    """Query pairs of one class; POSITIVE pairs satisfy s -> t, s != t,
    NEGATIVE pairs satisfy not (s -> t), RANDOM pairs satisfy s != t."""

    pairs: list[tuple[int, int]]
    kind: WorkloadKind
    seed: int


def gen_random_dag(n: int, m: int, seed: int) -> Graph:
    """Random DAG: m node pairs drawn uniformly, each oriented min -> max.

    Duplicates are removed afterwards, so the edge count may fall short
    of m.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    a = np.empty(0, dtype=np.int64)
    b = np.empty(0, dtype=np.int64)
    need = m if n > 1 else 0
    while need:
        xa = rng.integers(0, n, size=need, dtype=np.int64)
        xb = rng.integers(0, n, size=need, dtype=np.int64)
        keep = xa != xb
        a = np.concatenate([a, xa[keep]])
        b = np.concatenate([b, xb[keep]])
        need = m - len(a)
    heads = np.minimum(a, b)
    tails = np.maximum(a, b)
    packed = np.unique(heads * n + tails)
    return Graph.from_edges(n, packed // n, packed % n)


def gen_kronecker_dag(scale: int, edge_factor: int = 16, seed: int = 0,
                      skew: tuple[float, float, float, float] = GRAPH500_SKEW) -> Graph:
    """RMAT graph on 2**scale nodes, edges oriented min -> max.

    Each of edge_factor * 2**scale raw edges picks one quadrant per
    recursion level with probabilities skew = (A, B, C, D); self-loops
    and duplicates are dropped.
    """
    if scale > 30:
        raise ValueError("scale must be <= 30")
    if abs(sum(skew) - 1.0) > 1e-9:
        raise ValueError(f"skew probabilities must sum to 1, got {sum(skew)}")
    n = 1 << scale
    m = edge_factor * n
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(skew[:3])
    u = np.zeros(m, dtype=np.int64)
    v = np.zeros(m, dtype=np.int64)
    for _ in range(scale):
        quadrant = np.searchsorted(cdf, rng.random(m), side="right")
        u = (u << 1) | (quadrant >> 1)
        v = (v << 1) | (quadrant & 1)
    heads = np.minimum(u, v)
    tails = np.maximum(u, v)
    keep = heads != tails
    packed = np.unique(heads[keep] * n + tails[keep])
    return Graph.from_edges(n, packed >> scale, packed & (n - 1))


def _positive_feasible(graph: Graph) -> bool:
    # Some edge with distinct endpoints gives a positive pair.
    heads = np.repeat(np.arange(graph.n, dtype=np.int64),
                      np.diff(graph.out_offsets.astype(np.int64)))
    return bool(np.any(heads != graph.out_targets.astype(np.int64)))


def gen_workload(graph: Graph, kind: WorkloadKind, count: int, seed: int) -> Workload:
    """Sample `count` query pairs of the requested class.

    POSITIVE: uniform s among nodes that reach something besides
    themselves, then t uniform over reach(s) minus s. NEGATIVE: uniform
    s with reach(s) != V, then t uniform over the complement. Source
    draws failing the class precondition are rejected and redrawn.
    """
    n = graph.n
    rng = np.random.default_rng(seed)
    pairs: list[tuple[int, int]] = []

    if kind is WorkloadKind.RANDOM:
        if n < 2:
            raise WorkloadError("RANDOM workload needs at least 2 nodes")
        while len(pairs) < count:
            s = int(rng.integers(0, n))
            t = int(rng.integers(0, n))
            if s != t:
                pairs.append((s, t))
        return Workload(pairs, kind, seed)

    if kind is WorkloadKind.POSITIVE and not _positive_feasible(graph):
        raise WorkloadError("no positive pair exists: graph has no edge between distinct nodes")

    cache: dict[int, np.ndarray] = {}

    def reach_ids(s: int) -> np.ndarray:
        ids = cache.get(s)
        if ids is None:
            ids = np.flatnonzero(reachable_mask(graph, s))
            if len(cache) < 256:  # bound memory on large graphs
                cache[s] = ids
        return ids

    exhaustive_checked = False
    rejections = 0
    while len(pairs) < count:
        s = int(rng.integers(0, n))
        ids = reach_ids(s)
        if kind is WorkloadKind.POSITIVE:
            if len(ids) < 2:
                rejections += 1
                continue
            choices = ids[ids != s]
            t = int(choices[rng.integers(0, len(choices))])
        else:
            if len(ids) == n:
                rejections += 1
                if rejections > max(1000, 4 * n) and not exhaustive_checked:
                    exhaustive_checked = True
                    if all(len(reach_ids(v)) == n for v in range(n)):
                        raise WorkloadError(
                            "no negative pair exists: every node reaches every node")
                continue
            mask = np.ones(n, dtype=bool)
            mask[ids] = False
            choices = np.flatnonzero(mask)
            t = int(choices[rng.integers(0, len(choices))])
        pairs.append((s, t))
    return Workload(pairs, kind, seed)
