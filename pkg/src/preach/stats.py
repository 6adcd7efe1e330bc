"""Summary statistics for a graph instance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .index import build_index
from .search import SearchScratch, query


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    density: float
    d: int
    positive_rate: float

    def csv_row(self, name: str) -> str:
        return (f"{name},{self.n},{self.m},{self.density:.4f},"
                f"{self.d},{self.positive_rate:.6f}")


def graph_stats(graph: Graph, sample_pairs: int = 100_000, seed: int = 0) -> GraphStats:
    """n, m, density, maximal path length d, and the positive-query rate
    over sample_pairs random (s, t) draws with s != t.

    Cyclic inputs are condensed first; d is the maximum forward
    topological level of the component dag.
    """
    index = build_index(graph)
    level = index.levels.level
    d = int(level.max()) if len(level) else 0
    density = graph.m / graph.n if graph.n else 0.0

    positive_rate = 0.0
    if graph.n >= 2 and sample_pairs > 0:
        rng = np.random.default_rng(seed)
        scratch = SearchScratch.for_index(index)
        positives = 0
        done = 0
        while done < sample_pairs:
            s = int(rng.integers(0, graph.n))
            t = int(rng.integers(0, graph.n))
            if s == t:
                continue
            result, _ = query(index, scratch, s, t)
            positives += result
            done += 1
        positive_rate = positives / sample_pairs
    return GraphStats(n=graph.n, m=graph.m, density=density, d=d,
                      positive_rate=positive_rate)
