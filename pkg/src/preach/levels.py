"""Topological levels via a counter-gated DFS.

Forward levels are longest-path distances from the sources; backward
levels are longest-path distances to the sinks (computed by running the
same traversal on the reversed dag). The traversal also records, per
root, how many nodes first completed under that root; the roots sorted
by descending tree size seed the DFS-label computation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CycleError
from .graph import Graph


class Direction(enum.Enum):
    FWD = "fwd"
    BWD = "bwd"


@dataclass(frozen=True)
class DirectedLevels:
    """Levels for one traversal direction plus per-root tree sizes."""

    level: np.ndarray
    tree_size: dict[int, int]
    root_order: list[int]


@dataclass(frozen=True)
class LevelData:
    """Forward and backward topological levels of a dag."""

    fwd: DirectedLevels
    bwd: DirectedLevels

    @property
    def level(self) -> np.ndarray:
        return self.fwd.level

    @property
    def back_level(self) -> np.ndarray:
        return self.bwd.level


def compute_levels(dag: Graph, direction: Direction) -> DirectedLevels:
    """Counter-gated DFS: recurse into a node only once its last
    unexplored incoming edge (in traversal direction) has been seen.

    Roots are scanned in ascending id; root_order sorts them by
    descending tree size, ties by ascending id.
    """
    n = dag.n
    if direction is Direction.FWD:
        offsets = dag.out_offsets.tolist()
        targets = dag.out_targets.tolist()
        rev_offsets = dag.in_offsets
    else:
        offsets = dag.in_offsets.tolist()
        targets = dag.in_targets.tolist()
        rev_offsets = dag.out_offsets

    counter = np.diff(rev_offsets.astype(np.int64)).tolist()
    level = [0] * n
    visited = bytearray(n)
    tree_size: dict[int, int] = {}
    completed = 0

    for root in range(n):
        if counter[root] != 0 or visited[root]:
            continue
        visited[root] = 1
        size = 1
        stack = [(root, offsets[root])]
        while stack:
            u, ei = stack.pop()
            end = offsets[u + 1]
            lu1 = level[u] + 1
            while ei < end:
                v = targets[ei]
                ei += 1
                if level[v] < lu1:
                    level[v] = lu1
                counter[v] -= 1
                if counter[v] == 0:
                    stack.append((u, ei))
                    stack.append((v, offsets[v]))
                    visited[v] = 1
                    size += 1
                    break
        tree_size[root] = size
        completed += size

    if completed != n:
        raise CycleError("graph has a cycle: some node never became ready")
    root_order = sorted(tree_size, key=lambda r: (-tree_size[r], r))
    return DirectedLevels(
        level=np.asarray(level, dtype=np.uint32),
        tree_size=tree_size,
        root_order=root_order,
    )


def compute_level_data(dag: Graph) -> LevelData:
    return LevelData(
        fwd=compute_levels(dag, Direction.FWD),
        bwd=compute_levels(dag, Direction.BWD),
    )
