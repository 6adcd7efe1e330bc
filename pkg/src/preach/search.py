"""Reachability queries: pruned bidirectional search plus BFS baselines.

The indexed query maps both endpoints into the component dag, applies
the pruning rules to s and t directly, and only then starts a strictly
alternating bidirectional search. Forward exploration follows the
rank-increasing half of the edge partition, backward the
rank-decreasing half; every neighbor is tested against the pruning
rules before it is queued. Positive rules stop the whole query, empty
rules merely drop the neighbor.
"""

from __future__ import annotations

import array
import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from ._kernel import (CODE_EXHAUSTED, CODE_FULL_INTERVAL, CODE_INITIAL_PRUNE,
                      CODE_MEET, HAVE_KERNEL, search_kernel)
from .graph import Graph
from .index import ReachIndex


class PruneResult(enum.Enum):
    POSITIVE_STOP = "positive_stop"
    PRUNE = "prune"
    CONTINUE = "continue"


class Settled(enum.Enum):
    S_EQ_T = "s_eq_t"
    INITIAL_PRUNE = "initial_prune"
    FULL_INTERVAL = "full_interval"
    MEET = "meet"
    EXHAUSTED = "exhausted"


@dataclass
class QueryStats:
    result: bool
    settled_by: Settled
    visited_fwd: int = 0
    visited_bwd: int = 0
    enqueued_fwd: int = 0
    enqueued_bwd: int = 0


_EPOCH_LIMIT = 2**63


class SearchScratch:
    """Reusable per-querier search state with epoch-stamped visit marks.

    Stamps make the between-query reset O(1); the arrays are only zeroed
    on epoch wraparound. Not safe for two simultaneous queries.
    """

    def __init__(self, n: int):
        self.n = n
        # Forward and backward marks interleaved at 2v and 2v + 1; the
        # search reads both for every scanned edge and this keeps them
        # on one cache line. The interpreted paths use the array.array
        # copy, the compiled kernel the numpy one; both share the epoch
        # counter so neither can read the other's stale marks.
        self.stamp = array.array("q", bytes(16 * n))
        self.kstamp = np.zeros(2 * n, dtype=np.int64)
        self.kfq = np.empty(max(1, n), dtype=np.int64)
        self.kbq = np.empty(max(1, n), dtype=np.int64)
        self.epoch = 0
        self.fwd_queue: deque[int] = deque()
        self.bwd_queue: deque[int] = deque()

    @classmethod
    def for_index(cls, index: ReachIndex) -> "SearchScratch":
        return cls(index.dag.dag.n)

    @classmethod
    def for_graph(cls, graph: Graph) -> "SearchScratch":
        return cls(graph.n)

    def next_epoch(self) -> int:
        self.epoch += 1
        if self.epoch >= _EPOCH_LIMIT:
            self.stamp = array.array("q", bytes(16 * self.n))
            self.kstamp[:] = 0
            self.epoch = 1
        return self.epoch


def prune_forward(index: ReachIndex, v: int, t: int) -> PruneResult:
    """Test a forward-search candidate v against target t (condensed ids).

    Positive rules (full intervals) run before negative ones (levels,
    empty intervals); the first full-interval rule subsumes v == t.
    """
    cfg = index.config
    hot = index.hot()
    pt = hot["f_phi"][t]
    if cfg.use_dfs:
        if hot["f_phi"][v] <= pt <= hot["f_phi_hat"][v]:
            return PruneResult.POSITIVE_STOP
        if hot["f_ptree_lo"][v] <= pt <= hot["f_ptree_hi"][v]:
            return PruneResult.POSITIVE_STOP
    if cfg.use_levels:
        if (hot["level"][v] >= hot["level"][t]
                or hot["back_level"][v] <= hot["back_level"][t]):
            return PruneResult.PRUNE
    if cfg.use_dfs:
        if (pt > hot["f_phi_hat"][v] or pt < hot["f_phi_min"][v]
                or hot["f_phi_gap"][v] < pt < hot["f_phi"][v]):
            return PruneResult.PRUNE
    return PruneResult.CONTINUE


def prune_backward(index: ReachIndex, v: int, s: int) -> PruneResult:
    """Mirror of prune_forward for the backward search, against source s."""
    cfg = index.config
    hot = index.hot()
    ps = hot["b_phi"][s]
    if cfg.use_dfs:
        if hot["b_phi"][v] <= ps <= hot["b_phi_hat"][v]:
            return PruneResult.POSITIVE_STOP
        if hot["b_ptree_lo"][v] <= ps <= hot["b_ptree_hi"][v]:
            return PruneResult.POSITIVE_STOP
    if cfg.use_levels:
        if (hot["level"][v] <= hot["level"][s]
                or hot["back_level"][v] >= hot["back_level"][s]):
            return PruneResult.PRUNE
    if cfg.use_dfs:
        if (ps > hot["b_phi_hat"][v] or ps < hot["b_phi_min"][v]
                or hot["b_phi_gap"][v] < ps < hot["b_phi"][v]):
            return PruneResult.PRUNE
    return PruneResult.CONTINUE


def _u32(values) -> array.array:
    out = array.array("I")
    out.frombytes(np.ascontiguousarray(values, dtype=np.uint32).tobytes())
    return out


def _bound_arrays(index: ReachIndex) -> tuple:
    """Flat query-side data for the interpreted path, cached on the index."""
    bound = getattr(index, "_bound", None)
    if bound is None:
        dag = index.dag.dag
        F = array.array("I")
        F.frombytes(np.ascontiguousarray(index.fwd_pack).tobytes())
        B = array.array("I")
        B.frombytes(np.ascontiguousarray(index.bwd_pack).tobytes())
        bound = (
            _u32(index.dag.component_of),
            F,
            B,
            _u32(index.rch.fwd_offsets), _u32(index.rch.fwd_targets),
            _u32(index.rch.bwd_offsets), _u32(index.rch.bwd_targets),
            _u32(dag.out_offsets), _u32(dag.out_targets),
            _u32(dag.in_offsets), _u32(dag.in_targets),
        )
        object.__setattr__(index, "_bound", bound)
    return bound


def _kernel_arrays(index: ReachIndex) -> tuple:
    """Contiguous uint32 views for the compiled kernel, cached on the index."""
    bound = getattr(index, "_kbound", None)
    if bound is None:
        dag = index.dag.dag

        def u32(a):
            return np.ascontiguousarray(a, dtype=np.uint32)

        bound = (
            _u32(index.dag.component_of),
            u32(index.fwd_pack), u32(index.bwd_pack),
            u32(index.rch.fwd_offsets), u32(index.rch.fwd_targets),
            u32(index.rch.bwd_offsets), u32(index.rch.bwd_targets),
            u32(dag.out_offsets), u32(dag.out_targets),
            u32(dag.in_offsets), u32(dag.in_targets),
        )
        object.__setattr__(index, "_kbound", bound)
    return bound


_CODE_TO_SETTLED = {
    CODE_EXHAUSTED: Settled.EXHAUSTED,
    CODE_INITIAL_PRUNE: Settled.INITIAL_PRUNE,
    CODE_FULL_INTERVAL: Settled.FULL_INTERVAL,
    CODE_MEET: Settled.MEET,
}


def query(index: ReachIndex, scratch: SearchScratch,
          s: int, t: int) -> tuple[bool, QueryStats]:
    """Answer an s -> t reachability query over original node ids.

    Dispatches to the compiled search kernel when available, otherwise
    to the interpreted loop; both implement the identical search and
    rule order, so the answer and the stats do not depend on the path.
    """
    if not HAVE_KERNEL:
        return _query_python(index, scratch, s, t)
    n_orig = index.original_n
    if not (0 <= s < n_orig and 0 <= t < n_orig):
        raise ValueError(f"node id out of range: ({s}, {t}), n={n_orig}")
    (comp, F, B,
     rch_f_offsets, rch_f_targets, rch_b_offsets, rch_b_targets,
     out_offsets, out_targets, in_offsets, in_targets) = _kernel_arrays(index)
    cs = comp[s]
    ct = comp[t]
    if cs == ct:
        return True, QueryStats(True, Settled.S_EQ_T)
    cfg = index.config
    if cfg.use_rch:
        f_offsets, f_targets = rch_f_offsets, rch_f_targets
        b_offsets, b_targets = rch_b_offsets, rch_b_targets
    else:
        f_offsets, f_targets = out_offsets, out_targets
        b_offsets, b_targets = in_offsets, in_targets
    epoch = scratch.next_epoch()
    code, vf, vb, ef, eb = search_kernel(
        cs, ct, cfg.use_levels, cfg.use_dfs, cfg.use_rch,
        F, B, f_offsets, f_targets, b_offsets, b_targets,
        scratch.kstamp, scratch.kfq, scratch.kbq, epoch)
    settled = _CODE_TO_SETTLED[code]
    result = code >= CODE_FULL_INTERVAL
    return result, QueryStats(result, settled, vf, vb, ef, eb)


def _query_python(index: ReachIndex, scratch: SearchScratch,
                  s: int, t: int) -> tuple[bool, QueryStats]:
    """Interpreted reference implementation of query.

    The inner loop evaluates the pruning rules in a short-circuit form
    that is decision-equivalent to prune_forward/prune_backward: a
    stored positive interval always lies strictly below the owner's own
    preorder number, so once the target number is at or above it only
    the own-subtree test can stop positively and everything beyond the
    subtree is pruned.
    """
    n_orig = index.original_n
    if not (0 <= s < n_orig and 0 <= t < n_orig):
        raise ValueError(f"node id out of range: ({s}, {t}), n={n_orig}")
    (comp, F, B,
     rch_f_offsets, rch_f_targets, rch_b_offsets, rch_b_targets,
     out_offsets, out_targets, in_offsets, in_targets) = _bound_arrays(index)
    cs = comp[s]
    ct = comp[t]
    if cs == ct:
        return True, QueryStats(True, Settled.S_EQ_T)

    cfg = index.config
    use_levels = cfg.use_levels
    use_dfs = cfg.use_dfs
    use_rch = cfg.use_rch

    sbase = cs << 3
    tbase = ct << 3
    pt = F[tbase]
    lt = F[tbase + 6]
    blt = F[tbase + 7]
    ps = B[sbase]
    ls = F[sbase + 6]
    bls = F[sbase + 7]

    # Initial tests on s (forward rules) and t (backward rules).
    if use_dfs:
        a = F[sbase]
        if pt >= a:
            if pt <= F[sbase + 1]:
                return True, QueryStats(True, Settled.FULL_INTERVAL)
            return False, QueryStats(False, Settled.INITIAL_PRUNE)
        if F[sbase + 4] <= pt <= F[sbase + 5]:
            return True, QueryStats(True, Settled.FULL_INTERVAL)
        if pt < F[sbase + 2] or pt > F[sbase + 3]:
            return False, QueryStats(False, Settled.INITIAL_PRUNE)
    if use_levels and (ls >= lt or bls <= blt):
        return False, QueryStats(False, Settled.INITIAL_PRUNE)
    if use_dfs:
        a = B[tbase]
        if ps >= a:
            if ps <= B[tbase + 1]:
                return True, QueryStats(True, Settled.FULL_INTERVAL)
            return False, QueryStats(False, Settled.INITIAL_PRUNE)
        if B[tbase + 4] <= ps <= B[tbase + 5]:
            return True, QueryStats(True, Settled.FULL_INTERVAL)
        if ps < B[tbase + 2] or ps > B[tbase + 3]:
            return False, QueryStats(False, Settled.INITIAL_PRUNE)
    if use_levels and (lt <= ls or blt >= bls):
        return False, QueryStats(False, Settled.INITIAL_PRUNE)

    if use_rch:
        f_offsets, f_targets = rch_f_offsets, rch_f_targets
        b_offsets, b_targets = rch_b_offsets, rch_b_targets
    else:
        f_offsets, f_targets = out_offsets, out_targets
        b_offsets, b_targets = in_offsets, in_targets

    epoch = scratch.next_epoch()
    stamp = scratch.stamp
    fq = scratch.fwd_queue
    bq = scratch.bwd_queue
    fq.clear()
    bq.clear()
    fq.append(cs)
    bq.append(ct)
    stamp[cs + cs] = epoch
    stamp[ct + ct + 1] = epoch
    fq_pop = fq.popleft
    bq_pop = bq.popleft
    fq_push = fq.append
    bq_push = bq.append
    visited_fwd = visited_bwd = 0
    enqueued_fwd = enqueued_bwd = 1
    settled = None

    while fq or bq:
        if not use_rch and not (fq and bq):
            # Plain bidirectional semantics: one exhausted side settles it.
            break
        if fq:
            v = fq_pop()
            visited_fwd += 1
            for w in f_targets[f_offsets[v]:f_offsets[v + 1]]:
                wi = w + w
                if stamp[wi + 1] == epoch:
                    settled = Settled.MEET
                    break
                if stamp[wi] == epoch:
                    continue
                base = w << 3
                if use_dfs:
                    a = F[base]
                    if pt >= a:
                        if pt <= F[base + 1]:
                            settled = Settled.FULL_INTERVAL
                            break
                        continue
                    if F[base + 4] <= pt <= F[base + 5]:
                        settled = Settled.FULL_INTERVAL
                        break
                    if pt < F[base + 2] or pt > F[base + 3]:
                        continue
                if use_levels and (F[base + 6] >= lt or F[base + 7] <= blt):
                    continue
                stamp[wi] = epoch
                fq_push(w)
                enqueued_fwd += 1
            if settled is not None:
                break
        if bq:
            v = bq_pop()
            visited_bwd += 1
            for w in b_targets[b_offsets[v]:b_offsets[v + 1]]:
                wi = w + w
                if stamp[wi] == epoch:
                    settled = Settled.MEET
                    break
                if stamp[wi + 1] == epoch:
                    continue
                base = w << 3
                if use_dfs:
                    a = B[base]
                    if ps >= a:
                        if ps <= B[base + 1]:
                            settled = Settled.FULL_INTERVAL
                            break
                        continue
                    if B[base + 4] <= ps <= B[base + 5]:
                        settled = Settled.FULL_INTERVAL
                        break
                    if ps < B[base + 2] or ps > B[base + 3]:
                        continue
                if use_levels and (B[base + 6] <= ls or B[base + 7] >= bls):
                    continue
                stamp[wi + 1] = epoch
                bq_push(w)
                enqueued_bwd += 1
            if settled is not None:
                break
    if settled is None:
        settled = Settled.EXHAUSTED
    result = settled is not Settled.EXHAUSTED
    return result, QueryStats(result, settled, visited_fwd, visited_bwd,
                              enqueued_fwd, enqueued_bwd)


def bfs_query(graph: Graph, s: int, t: int) -> bool:
    """Plain forward BFS; no preprocessing, linear time."""
    if not (0 <= s < graph.n and 0 <= t < graph.n):
        raise ValueError(f"node id out of range: ({s}, {t}), n={graph.n}")
    if s == t:
        return True
    hot = graph.hot()
    offsets, targets = hot["out_offsets"], hot["out_targets"]
    seen = bytearray(graph.n)
    seen[s] = 1
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for ei in range(offsets[u], offsets[u + 1]):
            v = targets[ei]
            if v == t:
                return True
            if not seen[v]:
                seen[v] = 1
                queue.append(v)
    return False


def bidir_bfs_query(graph: Graph, scratch: SearchScratch,
                    s: int, t: int) -> tuple[bool, QueryStats]:
    """Bidirectional BFS baseline, alternating one node per side per round.

    Returns false as soon as either frontier is exhausted.
    """
    if not (0 <= s < graph.n and 0 <= t < graph.n):
        raise ValueError(f"node id out of range: ({s}, {t}), n={graph.n}")
    if s == t:
        return True, QueryStats(True, Settled.S_EQ_T)
    hot = graph.hot()
    out_offsets, out_targets = hot["out_offsets"], hot["out_targets"]
    in_offsets, in_targets = hot["in_offsets"], hot["in_targets"]
    epoch = scratch.next_epoch()
    stamp = scratch.stamp
    fq = scratch.fwd_queue
    bq = scratch.bwd_queue
    fq.clear()
    bq.clear()
    fq.append(s)
    bq.append(t)
    stamp[s + s] = epoch
    stamp[t + t + 1] = epoch
    visited_fwd = visited_bwd = 0
    enqueued_fwd = enqueued_bwd = 1
    settled = None
    while fq and bq:
        v = fq.popleft()
        visited_fwd += 1
        for w in out_targets[out_offsets[v]:out_offsets[v + 1]]:
            wi = w + w
            if stamp[wi + 1] == epoch:
                settled = Settled.MEET
                break
            if stamp[wi] != epoch:
                stamp[wi] = epoch
                fq.append(w)
                enqueued_fwd += 1
        if settled is not None:
            break
        v = bq.popleft()
        visited_bwd += 1
        for w in in_targets[in_offsets[v]:in_offsets[v + 1]]:
            wi = w + w
            if stamp[wi] == epoch:
                settled = Settled.MEET
                break
            if stamp[wi + 1] != epoch:
                stamp[wi + 1] = epoch
                bq.append(w)
                enqueued_bwd += 1
        if settled is not None:
            break
    if settled is None:
        settled = Settled.EXHAUSTED
    result = settled is Settled.MEET
    return result, QueryStats(result, settled, visited_fwd, visited_bwd,
                              enqueued_fwd, enqueued_bwd)


def reachable_mask(graph: Graph, s: int) -> np.ndarray:
    """Boolean mask of nodes reachable from s, via vectorized frontier BFS."""
    if not 0 <= s < graph.n:
        raise ValueError(f"node id out of range: {s}, n={graph.n}")
    offsets = graph.out_offsets.astype(np.int64)
    targets = graph.out_targets
    visited = np.zeros(graph.n, dtype=bool)
    visited[s] = True
    frontier = np.array([s], dtype=np.int64)
    while frontier.size:
        starts = offsets[frontier]
        counts = offsets[frontier + 1] - starts
        total = int(counts.sum())
        if not total:
            break
        base = np.repeat(starts, counts)
        within = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = targets[base + within].astype(np.int64)
        nbrs = nbrs[~visited[nbrs]]
        visited[nbrs] = True
        frontier = np.unique(nbrs)
    return visited


def reachable_set(graph: Graph, s: int) -> set[int]:
    """Exact forward reachable set of s, including s."""
    return set(np.flatnonzero(reachable_mask(graph, s)).tolist())
