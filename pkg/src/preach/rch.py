"""Contraction ordering for reachability queries.

Nodes are contracted in rounds of repeatedly removing current sources and
sinks, cheapest input-degree first. No shortcuts are ever needed, so the
"contraction" degenerates to a traversal that only assigns ranks and
partitions the edges into a forward half (toward higher rank) and a
backward half (toward lower rank).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import CycleError
from .graph import Graph


@dataclass(frozen=True)
class RchPartition:
    """Contraction ranks plus the rank-partitioned adjacency.

    order is a bijection V -> 1..n. Each dag edge (u, v) lives in exactly
    one of the two CSR halves: under u in the forward half when
    order(u) < order(v), else under v in the backward half. Per-node
    entries are sorted by ascending rank distance from the owner.
    """

    order: np.ndarray
    fwd_offsets: np.ndarray
    fwd_targets: np.ndarray
    bwd_offsets: np.ndarray
    bwd_targets: np.ndarray


def compute_rch(dag: Graph) -> RchPartition:
    """Assign contraction ranks by min-degree source/sink elimination.

    Priority is total degree in the *input* dag, ties broken by smaller
    node id; exactly n pushes and n pops are performed.
    """
    n = dag.n
    out_offsets = dag.out_offsets.tolist()
    out_targets = dag.out_targets.tolist()
    in_offsets = dag.in_offsets.tolist()
    in_targets = dag.in_targets.tolist()

    cur_in = [in_offsets[v + 1] - in_offsets[v] for v in range(n)]
    cur_out = [out_offsets[v + 1] - out_offsets[v] for v in range(n)]
    priority = [cur_in[v] + cur_out[v] for v in range(n)]

    heap = [(priority[v], v) for v in range(n) if cur_in[v] == 0 or cur_out[v] == 0]
    heapq.heapify(heap)
    queued = bytearray(n)
    for _, v in heap:
        queued[v] = 1

    order = [0] * n
    contracted = bytearray(n)
    rank = 0
    while heap:
        _, v = heapq.heappop(heap)
        rank += 1
        order[v] = rank
        contracted[v] = 1
        if cur_in[v] == 0:
            for ei in range(out_offsets[v], out_offsets[v + 1]):
                w = out_targets[ei]
                if contracted[w]:
                    continue
                cur_in[w] -= 1
                if cur_in[w] == 0 and not queued[w]:
                    queued[w] = 1
                    heapq.heappush(heap, (priority[w], w))
        if cur_out[v] == 0:
            for ei in range(in_offsets[v], in_offsets[v + 1]):
                u = in_targets[ei]
                if contracted[u]:
                    continue
                cur_out[u] -= 1
                if cur_out[u] == 0 and not queued[u]:
                    queued[u] = 1
                    heapq.heappush(heap, (priority[u], u))
    if rank != n:
        raise CycleError("graph has a cycle: no source or sink available")
    return _partition_edges(dag, order)


def _partition_edges(dag: Graph, order: list[int]) -> RchPartition:
    n = dag.n
    order_arr = np.asarray(order, dtype=np.int64)
    if dag.m:
        edges = dag.edges().astype(np.int64)
        heads, tails = edges[:, 0], edges[:, 1]
        upward = order_arr[heads] < order_arr[tails]
        # Forward half keyed by tail-rank so per-node lists ascend in rank.
        fu, fv = heads[upward], tails[upward]
        forder = np.lexsort((order_arr[fv], fu))
        bu, bv = tails[~upward], heads[~upward]
        border = np.lexsort((order_arr[bv], bu))
        fwd_targets = fv[forder].astype(np.uint32)
        bwd_targets = bv[border].astype(np.uint32)
        fwd_counts = np.bincount(fu, minlength=n)
        bwd_counts = np.bincount(bu, minlength=n)
    else:
        fwd_targets = bwd_targets = np.empty(0, dtype=np.uint32)
        fwd_counts = bwd_counts = np.zeros(n, dtype=np.int64)
    fwd_offsets = np.zeros(n + 1, dtype=np.uint32)
    bwd_offsets = np.zeros(n + 1, dtype=np.uint32)
    np.cumsum(fwd_counts, out=fwd_offsets[1:])
    np.cumsum(bwd_counts, out=bwd_offsets[1:])
    return RchPartition(
        order=order_arr.astype(np.uint32),
        fwd_offsets=fwd_offsets,
        fwd_targets=fwd_targets,
        bwd_offsets=bwd_offsets,
        bwd_targets=bwd_targets,
    )
