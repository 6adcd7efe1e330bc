"""Reachability index: condensation + RCH partition + levels + DFS labels."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field, replace

import numpy as np

from .condense import CondensedDag, condense
from .dfslabels import DfsLabels, compute_dfs_labels
from .errors import IndexFormatError
from .graph import Graph
from .levels import Direction, DirectedLevels, LevelData, compute_level_data
from .rch import RchPartition, compute_rch

_MAGIC = b"PRCH"
_VERSION = 1


@dataclass(frozen=True)
class IndexConfig:
    """Which heuristic families participate in query answering.

    Disabling a family never changes what gets built, only what the
    query consults; with use_rch off the search falls back to the full
    adjacency with plain bidirectional termination.
    """

    use_rch: bool = True
    use_levels: bool = True
    use_dfs: bool = True

    @staticmethod
    def all_combinations() -> list["IndexConfig"]:
        return [IndexConfig(bool(r), bool(l), bool(d))
                for r in (1, 0) for l in (1, 0) for d in (1, 0)]


def _pack_direction(labels: DfsLabels, level: np.ndarray,
                    back_level: np.ndarray) -> np.ndarray:
    """Interleave one direction's per-node test data, eight words a row.

    A query inspects up to eight scalars of a neighbor; packing them as
    one 32-byte row keeps that on a single cache line instead of eight
    cold loads from separate columns.
    """
    n = len(level)
    packed = np.empty((n, 8), dtype=np.uint32)
    packed[:, 0] = labels.phi
    packed[:, 1] = labels.phi_hat
    packed[:, 2] = labels.phi_min
    packed[:, 3] = labels.phi_gap
    packed[:, 4] = labels.ptree_lo
    packed[:, 5] = labels.ptree_hi
    packed[:, 6] = level
    packed[:, 7] = back_level
    return packed.reshape(-1)


def _labels_view(pack: np.ndarray) -> DfsLabels:
    rows = pack.reshape(-1, 8)
    return DfsLabels(phi=rows[:, 0], phi_hat=rows[:, 1], phi_min=rows[:, 2],
                     phi_gap=rows[:, 3], ptree_lo=rows[:, 4], ptree_hi=rows[:, 5])


@dataclass
class ReachIndex:
    """Everything needed to answer s -> t queries on the original graph.

    The per-node data is stored as two packed arrays (fwd_pack,
    bwd_pack) of eight uint32 words per node; the labels and levels
    handed to the constructor are re-exposed as column views into the
    packs, so the two representations cannot drift apart.
    """

    dag: CondensedDag
    rch: RchPartition
    levels: LevelData
    fwd_labels: DfsLabels
    bwd_labels: DfsLabels
    config: IndexConfig = field(default_factory=IndexConfig)
    original_n: int = 0
    fwd_pack: np.ndarray = field(default=None, repr=False, compare=False)
    bwd_pack: np.ndarray = field(default=None, repr=False, compare=False)
    # Lazy plain-list mirror of the hot arrays; rebuilt on demand.
    _hot: dict | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.fwd_pack is None:
            level = self.levels.level
            back_level = self.levels.back_level
            self.fwd_pack = _pack_direction(self.fwd_labels, level, back_level)
            self.bwd_pack = _pack_direction(self.bwd_labels, level, back_level)
        self.fwd_labels = _labels_view(self.fwd_pack)
        self.bwd_labels = _labels_view(self.bwd_pack)
        rows = self.fwd_pack.reshape(-1, 8)
        self.levels = LevelData(
            fwd=DirectedLevels(level=rows[:, 6],
                               tree_size=self.levels.fwd.tree_size,
                               root_order=self.levels.fwd.root_order),
            bwd=DirectedLevels(level=rows[:, 7],
                               tree_size=self.levels.bwd.tree_size,
                               root_order=self.levels.bwd.root_order),
        )

    def with_config(self, config: IndexConfig) -> "ReachIndex":
        """Shallow copy sharing all arrays, under a different config."""
        clone = replace(self, config=config)
        clone._hot = self._hot
        return clone

    def hot(self) -> dict:
        """Python-list views of the per-node arrays for the query inner loop."""
        if self._hot is None:
            dag = self.dag.dag
            self._hot = {
                "component_of": self.dag.component_of.tolist(),
                "out_offsets": dag.out_offsets.tolist(),
                "out_targets": dag.out_targets.tolist(),
                "in_offsets": dag.in_offsets.tolist(),
                "in_targets": dag.in_targets.tolist(),
                "fwd_offsets": self.rch.fwd_offsets.tolist(),
                "fwd_targets": self.rch.fwd_targets.tolist(),
                "bwd_offsets": self.rch.bwd_offsets.tolist(),
                "bwd_targets": self.rch.bwd_targets.tolist(),
                "level": self.levels.level.tolist(),
                "back_level": self.levels.back_level.tolist(),
                "f_phi": self.fwd_labels.phi.tolist(),
                "f_phi_hat": self.fwd_labels.phi_hat.tolist(),
                "f_phi_min": self.fwd_labels.phi_min.tolist(),
                "f_phi_gap": self.fwd_labels.phi_gap.tolist(),
                "f_ptree_lo": self.fwd_labels.ptree_lo.tolist(),
                "f_ptree_hi": self.fwd_labels.ptree_hi.tolist(),
                "b_phi": self.bwd_labels.phi.tolist(),
                "b_phi_hat": self.bwd_labels.phi_hat.tolist(),
                "b_phi_min": self.bwd_labels.phi_min.tolist(),
                "b_phi_gap": self.bwd_labels.phi_gap.tolist(),
                "b_ptree_lo": self.bwd_labels.ptree_lo.tolist(),
                "b_ptree_hi": self.bwd_labels.ptree_hi.tolist(),
            }
        return self._hot


def build_index(graph: Graph, config: IndexConfig = IndexConfig()) -> ReachIndex:
    """Condense the graph and compute all index components."""
    cdag = condense(graph)
    dag = cdag.dag
    rch = compute_rch(dag)
    levels = compute_level_data(dag)
    fwd_labels = compute_dfs_labels(dag, levels.fwd.root_order, Direction.FWD)
    bwd_labels = compute_dfs_labels(dag, levels.bwd.root_order, Direction.BWD)
    return ReachIndex(
        dag=cdag,
        rch=rch,
        levels=levels,
        fwd_labels=fwd_labels,
        bwd_labels=bwd_labels,
        config=config,
        original_n=graph.n,
    )


def index_footprint(index: ReachIndex) -> int:
    """Modeled index size: 4 bytes per dag edge plus 64 per dag node
    (2 adjacency offsets + 2 directions x 7 label words, 4 bytes each)."""
    dag = index.dag.dag
    return 4 * dag.m + 64 * dag.n


def index_resident_bytes(index: ReachIndex) -> int:
    """Actual bytes held by the index's per-node and per-edge arrays.

    The labels and levels are views into the packs and are not counted
    separately.
    """
    arrays = [
        index.rch.order,
        index.rch.fwd_offsets, index.rch.fwd_targets,
        index.rch.bwd_offsets, index.rch.bwd_targets,
        index.fwd_pack, index.bwd_pack,
    ]
    return sum(a.nbytes for a in arrays)


def _label_arrays(labels: DfsLabels) -> list[np.ndarray]:
    return [labels.phi, labels.phi_hat, labels.phi_min,
            labels.phi_gap, labels.ptree_lo, labels.ptree_hi]


def save_index(index: ReachIndex, path) -> None:
    """Persist the index as little-endian u32 arrays.

    Layout after the "PRCH"/version/n/m header: order, forward
    offsets+targets, backward offsets+targets, level, back_level, forward
    labels (phi, phi_hat, phi_min, phi_gap, ptree_lo, ptree_hi), backward
    labels likewise; then the original node count and the component map
    so a loaded index can answer original-id queries.
    """
    dag = index.dag.dag
    arrays: list[np.ndarray] = [
        index.rch.order,
        index.rch.fwd_offsets, index.rch.fwd_targets,
        index.rch.bwd_offsets, index.rch.bwd_targets,
        index.levels.level, index.levels.back_level,
    ]
    arrays += _label_arrays(index.fwd_labels)
    arrays += _label_arrays(index.bwd_labels)
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<III", _VERSION, dag.n, dag.m))
        for arr in arrays:
            fh.write(np.ascontiguousarray(arr, dtype="<u4").tobytes())
        fh.write(struct.pack("<I", index.original_n))
        fh.write(np.ascontiguousarray(index.dag.component_of, dtype="<u4").tobytes())


def load_index(path) -> ReachIndex:
    """Load an index written by save_index, validating the header and sizes."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != _MAGIC:
        raise IndexFormatError("bad magic, not an index file")
    version, n, m = struct.unpack_from("<III", blob, 4)
    if version != _VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    pos = 16

    def take(count: int) -> np.ndarray:
        nonlocal pos
        nbytes = 4 * count
        if pos + nbytes > len(blob):
            raise IndexFormatError("truncated index file")
        arr = np.frombuffer(blob, dtype="<u4", count=count, offset=pos).astype(np.uint32)
        pos += nbytes
        return arr

    order = take(n)
    fwd_offsets = take(n + 1)
    fwd_targets = take(int(fwd_offsets[-1]) if n else 0)
    bwd_offsets = take(n + 1)
    bwd_targets = take(int(bwd_offsets[-1]) if n else 0)
    if len(fwd_targets) + len(bwd_targets) != m:
        raise IndexFormatError("edge partition sizes do not add up to m")
    level = take(n)
    back_level = take(n)
    fwd_labels = DfsLabels(*(take(n) for _ in range(6)))
    bwd_labels = DfsLabels(*(take(n) for _ in range(6)))
    (original_n,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    component_of = take(original_n)
    if pos != len(blob):
        raise IndexFormatError("trailing bytes in index file")

    # The dag adjacency is reconstructed from the edge partition.
    heads = np.concatenate([
        np.repeat(np.arange(n, dtype=np.int64), np.diff(fwd_offsets.astype(np.int64))),
        bwd_targets.astype(np.int64),
    ])
    tails = np.concatenate([
        fwd_targets.astype(np.int64),
        np.repeat(np.arange(n, dtype=np.int64), np.diff(bwd_offsets.astype(np.int64))),
    ])
    dag = Graph.from_edges(n, heads, tails)
    cdag = CondensedDag(dag=dag, component_of=component_of, component_count=n)
    levels = LevelData(
        fwd=DirectedLevels(level=level, tree_size={}, root_order=[]),
        bwd=DirectedLevels(level=back_level, tree_size={}, root_order=[]),
    )
    rch = RchPartition(order=order,
                       fwd_offsets=fwd_offsets, fwd_targets=fwd_targets,
                       bwd_offsets=bwd_offsets, bwd_targets=bwd_targets)
    return ReachIndex(dag=cdag, rch=rch, levels=levels,
                      fwd_labels=fwd_labels, bwd_labels=bwd_labels,
                      original_n=int(original_n))
