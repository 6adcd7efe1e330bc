"""Condensation of a digraph into its DAG of strongly connected components."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class CondensedDag:
    """Acyclic component graph plus the original-node -> component map.

    Component ids form a topological numbering: every dag edge (cu, cv)
    has cu < cv. The dag has no self-loops and no duplicate edges.
    """

    dag: Graph
    component_of: np.ndarray
    component_count: int

    def map_node(self, v: int) -> int:
        return int(self.component_of[v])


def _tarjan_components(graph: Graph) -> tuple[list[int], int]:
    """Iterative Tarjan; components numbered in pop (reverse topological) order."""
    n = graph.n
    offsets = graph.out_offsets.tolist()
    targets = graph.out_targets.tolist()
    index_of = [-1] * n
    lowlink = [0] * n
    on_stack = bytearray(n)
    component = [-1] * n
    scc_stack: list[int] = []
    counter = 0
    num_components = 0

    for root in range(n):
        if index_of[root] != -1:
            continue
        # Work entries are (node, next absolute edge index).
        work = [(root, offsets[root])]
        index_of[root] = lowlink[root] = counter
        counter += 1
        scc_stack.append(root)
        on_stack[root] = 1
        while work:
            v, ei = work.pop()
            end = offsets[v + 1]
            descended = False
            while ei < end:
                w = targets[ei]
                ei += 1
                if index_of[w] == -1:
                    work.append((v, ei))
                    work.append((w, offsets[w]))
                    index_of[w] = lowlink[w] = counter
                    counter += 1
                    scc_stack.append(w)
                    on_stack[w] = 1
                    descended = True
                    break
                if on_stack[w] and index_of[w] < lowlink[v]:
                    lowlink[v] = index_of[w]
            if descended:
                continue
            if lowlink[v] == index_of[v]:
                while True:
                    w = scc_stack.pop()
                    on_stack[w] = 0
                    component[w] = num_components
                    if w == v:
                        break
                num_components += 1
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
    return component, num_components


def condense(graph: Graph) -> CondensedDag:
    """Collapse strongly connected components into a deduplicated DAG.

    Deterministic for a canonical input graph; total on any digraph.
    """
    component, count = _tarjan_components(graph)
    # Tarjan pops sink-most components first; flipping the numbering makes
    # component ids a topological order of the dag.
    comp = np.asarray(component, dtype=np.int64)
    if count:
        comp = (count - 1) - comp
    if graph.m:
        edges = graph.edges().astype(np.int64)
        cu = comp[edges[:, 0]]
        cv = comp[edges[:, 1]]
        keep = cu != cv
        packed = np.unique(cu[keep] * count + cv[keep])
        heads = packed // count
        tails = packed % count
    else:
        heads = tails = np.empty(0, dtype=np.int64)
    dag = Graph.from_edges(count, heads, tails)
    return CondensedDag(dag=dag, component_of=comp.astype(np.uint32), component_count=count)
