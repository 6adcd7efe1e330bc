"""Compiled inner loop of the indexed query.

The search kernel is a direct port of the pure-Python loop in
search.py, operating on the packed per-node label rows and a flat
epoch-stamp array. It exists because the per-edge rule evaluation is a
handful of integer compares, which an interpreter cannot do in the few
nanoseconds the data layout allows. The module degrades gracefully:
when numba is unavailable, HAVE_KERNEL is False and callers fall back
to the interpreted loop.

Return codes: 0 exhausted, 1 initial prune, 2 full interval, 3 meet.
"""

from __future__ import annotations

try:
    from numba import njit

    HAVE_KERNEL = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAVE_KERNEL = False

CODE_EXHAUSTED = 0
CODE_INITIAL_PRUNE = 1
CODE_FULL_INTERVAL = 2
CODE_MEET = 3


def _search_kernel(cs, ct, use_levels, use_dfs, exhaust_both,
                   F, B, f_off, f_tgt, b_off, b_tgt,
                   stamp, fq, bq, epoch):
    """Pruned bidirectional search between condensed nodes cs and ct.

    F and B are the forward and backward packed label arrays (eight
    uint32 words per node: phi, phi_hat, phi_min, phi_gap, ptree_lo,
    ptree_hi, level, back_level). f_off/f_tgt and b_off/b_tgt are the
    adjacency halves to traverse, stamp is the interleaved visit-mark
    array keyed by epoch, and fq/bq are queue buffers of length n.
    Returns (code, visited_fwd, visited_bwd, enqueued_fwd, enqueued_bwd).
    """
    sbase = cs << 3
    tbase = ct << 3
    pt = int(F[tbase])
    lt = int(F[tbase + 6])
    blt = int(F[tbase + 7])
    ps = int(B[sbase])
    ls = int(F[sbase + 6])
    bls = int(F[sbase + 7])

    # Initial tests on s under the forward rules, then on t under the
    # backward rules, in the same short-circuit form as the main loop.
    if use_dfs:
        if pt >= F[sbase]:
            if pt <= F[sbase + 1]:
                return CODE_FULL_INTERVAL, 0, 0, 0, 0
            return CODE_INITIAL_PRUNE, 0, 0, 0, 0
        if F[sbase + 4] <= pt <= F[sbase + 5]:
            return CODE_FULL_INTERVAL, 0, 0, 0, 0
        if pt < F[sbase + 2] or pt > F[sbase + 3]:
            return CODE_INITIAL_PRUNE, 0, 0, 0, 0
    if use_levels and (ls >= lt or bls <= blt):
        return CODE_INITIAL_PRUNE, 0, 0, 0, 0
    if use_dfs:
        if ps >= B[tbase]:
            if ps <= B[tbase + 1]:
                return CODE_FULL_INTERVAL, 0, 0, 0, 0
            return CODE_INITIAL_PRUNE, 0, 0, 0, 0
        if B[tbase + 4] <= ps <= B[tbase + 5]:
            return CODE_FULL_INTERVAL, 0, 0, 0, 0
        if ps < B[tbase + 2] or ps > B[tbase + 3]:
            return CODE_INITIAL_PRUNE, 0, 0, 0, 0
    if use_levels and (lt <= ls or blt >= bls):
        return CODE_INITIAL_PRUNE, 0, 0, 0, 0

    fh = 0
    ft = 1
    bh = 0
    bt = 1
    fq[0] = cs
    bq[0] = ct
    stamp[2 * cs] = epoch
    stamp[2 * ct + 1] = epoch
    visited_fwd = 0
    visited_bwd = 0
    enqueued_fwd = 1
    enqueued_bwd = 1
    code = CODE_EXHAUSTED

    while ft > fh or bt > bh:
        if not exhaust_both and not (ft > fh and bt > bh):
            break
        if ft > fh:
            v = fq[fh]
            fh += 1
            visited_fwd += 1
            for ei in range(int(f_off[v]), int(f_off[v + 1])):
                w = int(f_tgt[ei])
                wi = w + w
                if stamp[wi + 1] == epoch:
                    code = CODE_MEET
                    break
                if stamp[wi] == epoch:
                    continue
                base = w << 3
                if use_dfs:
                    if pt >= F[base]:
                        if pt <= F[base + 1]:
                            code = CODE_FULL_INTERVAL
                            break
                        continue
                    if F[base + 4] <= pt <= F[base + 5]:
                        code = CODE_FULL_INTERVAL
                        break
                    if pt < F[base + 2] or pt > F[base + 3]:
                        continue
                if use_levels and (F[base + 6] >= lt or F[base + 7] <= blt):
                    continue
                stamp[wi] = epoch
                fq[ft] = w
                ft += 1
                enqueued_fwd += 1
            if code != CODE_EXHAUSTED:
                break
        if bt > bh:
            v = bq[bh]
            bh += 1
            visited_bwd += 1
            for ei in range(int(b_off[v]), int(b_off[v + 1])):
                w = int(b_tgt[ei])
                wi = w + w
                if stamp[wi] == epoch:
                    code = CODE_MEET
                    break
                if stamp[wi + 1] == epoch:
                    continue
                base = w << 3
                if use_dfs:
                    if ps >= B[base]:
                        if ps <= B[base + 1]:
                            code = CODE_FULL_INTERVAL
                            break
                        continue
                    if B[base + 4] <= ps <= B[base + 5]:
                        code = CODE_FULL_INTERVAL
                        break
                    if ps < B[base + 2] or ps > B[base + 3]:
                        continue
                if use_levels and (B[base + 6] <= ls or B[base + 7] >= bls):
                    continue
                stamp[wi + 1] = epoch
                bq[bt] = w
                bt += 1
                enqueued_bwd += 1
            if code != CODE_EXHAUSTED:
                break
    return code, visited_fwd, visited_bwd, enqueued_fwd, enqueued_bwd


if HAVE_KERNEL:
    search_kernel = njit(cache=True, nogil=True)(_search_kernel)
else:  # pragma: no cover
    search_kernel = None
