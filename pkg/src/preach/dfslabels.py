"""Interval labels from a single DFS numbering of a dag.

One traversal yields, per node v:

* phi(v): preorder number in 1..n.
* phi_hat(v): largest preorder in v's DFS subtree. Everything numbered
  in [phi(v), phi_hat(v)] is reachable from v; nothing above phi_hat(v) is.
* phi_min(v): the exact smallest preorder reachable from v, so numbers
  below it are unreachable.
* phi_gap(v): numbers in (phi_gap(v), phi(v)) are unreachable from v;
  sentinel 0 means the bound is vacuous.
* a stored subtree interval [ptree_lo(v), ptree_hi(v)] of some node
  reachable from v but outside v's own subtree, chosen to maximize the
  interval length; sentinel (1, 0) when no such node exists.

The empty intervals prune a search; the full intervals stop it with a
positive answer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CycleError
from .graph import Graph
from .levels import Direction


@dataclass(frozen=True)
class DfsLabels:
    """Per-node interval labels for one traversal direction."""

    phi: np.ndarray
    phi_hat: np.ndarray
    phi_min: np.ndarray
    phi_gap: np.ndarray
    ptree_lo: np.ndarray
    ptree_hi: np.ndarray


def compute_dfs_labels(dag: Graph, root_order: list[int],
                       direction: Direction = Direction.FWD) -> DfsLabels:
    """Run one DFS from the given roots and derive all interval labels.

    root_order must contain every root of the traversal direction
    (typically sorted by descending level-tree size). Edges are scanned
    in ascending neighbor id.
    """
    n = dag.n
    if direction is Direction.FWD:
        offsets = dag.out_offsets.tolist()
        targets = dag.out_targets.tolist()
    else:
        offsets = dag.in_offsets.tolist()
        targets = dag.in_targets.tolist()

    phi = [0] * n
    phi_hat = [0] * n
    phi_min = [0] * n
    phi_gap = [0] * n
    ptree_lo = [1] * n
    ptree_hi = [0] * n
    # 0 = unvisited, 1 = active, 2 = finished
    color = bytearray(n)
    counter = 0

    def absorb(v: int, w: int) -> None:
        # Fold a finished successor w into v's labels.
        if phi_min[w] < phi_min[v]:
            phi_min[v] = phi_min[w]
        if phi_gap[w] > phi_gap[v]:
            phi_gap[v] = phi_gap[w]
        pv = phi[v]
        if phi[w] < pv:
            # Cross successor: its whole subtree precedes v.
            if phi_hat[w] > phi_gap[v]:
                phi_gap[v] = phi_hat[w]
            _offer(v, phi[w], phi_hat[w])
        if ptree_lo[w] <= ptree_hi[w] and ptree_lo[w] < pv:
            _offer(v, ptree_lo[w], ptree_hi[w])

    def _offer(v: int, lo: int, hi: int) -> None:
        # Candidates inside v's own subtree (lo >= phi(v)) are redundant
        # with v's own interval and are never stored.
        best_lo, best_hi = ptree_lo[v], ptree_hi[v]
        if best_lo > best_hi:
            ptree_lo[v], ptree_hi[v] = lo, hi
            return
        size, best_size = hi - lo, best_hi - best_lo
        if size > best_size or (size == best_size and lo < best_lo):
            ptree_lo[v], ptree_hi[v] = lo, hi

    for root in root_order:
        if color[root]:
            continue
        counter += 1
        phi[root] = phi_min[root] = counter
        color[root] = 1
        stack = [(root, offsets[root])]
        while stack:
            v, ei = stack.pop()
            end = offsets[v + 1]
            descended = False
            while ei < end:
                w = targets[ei]
                ei += 1
                c = color[w]
                if c == 0:
                    stack.append((v, ei))
                    counter += 1
                    phi[w] = phi_min[w] = counter
                    color[w] = 1
                    stack.append((w, offsets[w]))
                    descended = True
                    break
                if c == 1:
                    raise CycleError("graph has a cycle: DFS hit an active node")
                absorb(v, w)
            if descended:
                continue
            phi_hat[v] = counter
            color[v] = 2
            if stack:
                absorb(stack[-1][0], v)

    if counter != n:
        raise CycleError("DFS roots did not cover the graph")
    return DfsLabels(
        phi=np.asarray(phi, dtype=np.uint32),
        phi_hat=np.asarray(phi_hat, dtype=np.uint32),
        phi_min=np.asarray(phi_min, dtype=np.uint32),
        phi_gap=np.asarray(phi_gap, dtype=np.uint32),
        ptree_lo=np.asarray(ptree_lo, dtype=np.uint32),
        ptree_hi=np.asarray(ptree_hi, dtype=np.uint32),
    )
