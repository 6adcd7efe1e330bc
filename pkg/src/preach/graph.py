"""Immutable directed-graph representation and file I/O.

Graphs are stored in compressed sparse row form over 32-bit node ids,
with both forward and backward incidence. The canonical form sorts every
adjacency list ascending by neighbor id, which makes traversal order (and
hence everything derived from it) deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import GraphParseError

# Ids and counts are 32-bit unsigned; 2**32-1 is reserved as a sentinel.
MAX_COUNT = 2**32 - 2


class GraphFormat(enum.Enum):
    EDGE_LIST = "edge_list"
    GRA = "gra"


def _csr(n: int, keys: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Bucket (key, value) pairs into CSR offsets/targets, values sorted per key."""
    order = np.lexsort((values, keys))
    targets = np.ascontiguousarray(values[order], dtype=np.uint32)
    counts = np.bincount(keys, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.uint32)
    np.cumsum(counts, out=offsets[1:])
    return offsets, targets


@dataclass(frozen=True, eq=False)
class Graph:
    """Canonical immutable digraph in CSR form, both directions.

    Invariants: every endpoint < n, in-adjacency is the exact transpose of
    out-adjacency, and each adjacency list is sorted ascending.
    """

    n: int
    m: int
    out_offsets: np.ndarray
    out_targets: np.ndarray
    in_offsets: np.ndarray
    in_targets: np.ndarray

    @staticmethod
    def from_edges(n: int, heads, tails) -> "Graph":
        """Build a canonical graph from parallel head/tail arrays.

        Duplicate edges are preserved; endpoints are validated against n.
        """
        if n > MAX_COUNT:
            raise GraphParseError(f"node count {n} exceeds 32-bit id space")
        heads = np.asarray(heads, dtype=np.int64)
        tails = np.asarray(tails, dtype=np.int64)
        if heads.shape != tails.shape or heads.ndim != 1:
            raise ValueError("heads and tails must be 1-d arrays of equal length")
        m = len(heads)
        if m > MAX_COUNT:
            raise GraphParseError(f"edge count {m} exceeds 32-bit space")
        if m and (heads.min() < 0 or tails.min() < 0
                  or heads.max() >= n or tails.max() >= n):
            raise GraphParseError("endpoint out of range")
        out_offsets, out_targets = _csr(n, heads, tails)
        in_offsets, in_targets = _csr(n, tails, heads)
        return Graph(n, m, out_offsets, out_targets, in_offsets, in_targets)

    def out_neighbors(self, u: int) -> np.ndarray:
        return self.out_targets[self.out_offsets[u]:self.out_offsets[u + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        return self.in_targets[self.in_offsets[v]:self.in_offsets[v + 1]]

    def out_degree(self, u: int) -> int:
        return int(self.out_offsets[u + 1] - self.out_offsets[u])

    def in_degree(self, v: int) -> int:
        return int(self.in_offsets[v + 1] - self.in_offsets[v])

    def edges(self) -> np.ndarray:
        """All edges as an (m, 2) array, sorted by (head, tail)."""
        heads = np.repeat(
            np.arange(self.n, dtype=np.uint32),
            np.diff(self.out_offsets.astype(np.int64)),
        )
        return np.column_stack((heads, self.out_targets))

    def hot(self) -> dict:
        """Plain-list views of the CSR arrays, cached for traversal loops."""
        cache = getattr(self, "_hot_cache", None)
        if cache is None:
            cache = {
                "out_offsets": self.out_offsets.tolist(),
                "out_targets": self.out_targets.tolist(),
                "in_offsets": self.in_offsets.tolist(),
                "in_targets": self.in_targets.tolist(),
            }
            object.__setattr__(self, "_hot_cache", cache)
        return cache

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and np.array_equal(self.out_offsets, other.out_offsets)
                and np.array_equal(self.out_targets, other.out_targets))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _parse_count(token: str, what: str, line: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphParseError(f"non-integer {what} {token!r}", line) from None
    if value < 0:
        raise GraphParseError(f"negative {what}", line)
    if value > MAX_COUNT:
        raise GraphParseError(f"{what} {value} exceeds 32-bit space", line)
    return value


def _load_edge_list(lines: list[str]) -> Graph:
    if not lines:
        raise GraphParseError("empty file", 1)
    header = lines[0].split()
    if len(header) != 2:
        raise GraphParseError("header must be '<n> <m>'", 1)
    n = _parse_count(header[0], "node count", 1)
    m = _parse_count(header[1], "edge count", 1)
    heads = np.empty(m, dtype=np.int64)
    tails = np.empty(m, dtype=np.int64)
    edge = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise GraphParseError("edge line must be '<u> <v>'", lineno)
        if edge >= m:
            raise GraphParseError(f"more than {m} edge lines", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"non-integer token in {raw.strip()!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError("endpoint out of range", lineno)
        heads[edge] = u
        tails[edge] = v
        edge += 1
    if edge != m:
        raise GraphParseError(f"expected {m} edges, found {edge}", len(lines))
    return Graph.from_edges(n, heads, tails)


def _load_gra(lines: list[str]) -> Graph:
    pos = 0
    if pos < len(lines) and lines[pos].strip() == "graph_for_greach":
        pos += 1
    if pos >= len(lines):
        raise GraphParseError("missing node count", pos + 1)
    n = _parse_count(lines[pos].strip(), "node count", pos + 1)
    pos += 1
    heads: list[int] = []
    tails: list[int] = []
    for expect in range(n):
        lineno = pos + 1
        if pos >= len(lines):
            raise GraphParseError(f"missing adjacency line for node {expect}", lineno)
        raw = lines[pos]
        pos += 1
        head, sep, rest = raw.partition(":")
        if not sep:
            raise GraphParseError("adjacency line must be '<id>: <succs> #'", lineno)
        node = _parse_count(head.strip(), "node id", lineno)
        if node != expect:
            raise GraphParseError(f"node ids must appear in ascending order, got {node}", lineno)
        tokens = rest.split()
        if not tokens or tokens[-1] != "#":
            raise GraphParseError("adjacency line must end with '#'", lineno)
        for token in tokens[:-1]:
            try:
                succ = int(token)
            except ValueError:
                raise GraphParseError(f"non-integer token {token!r}", lineno) from None
            if not 0 <= succ < n:
                raise GraphParseError("endpoint out of range", lineno)
            heads.append(node)
            tails.append(succ)
    return Graph.from_edges(n, np.array(heads, dtype=np.int64), np.array(tails, dtype=np.int64))


def load_graph(path, fmt: GraphFormat = GraphFormat.EDGE_LIST) -> Graph:
    """Load a graph file, returning it in canonical form."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if fmt is GraphFormat.EDGE_LIST:
        return _load_edge_list(lines)
    return _load_gra(lines)


def write_graph(graph: Graph, path, fmt: GraphFormat = GraphFormat.EDGE_LIST) -> None:
    """Write a graph; loading the file back yields a canonically equal graph."""
    with open(path, "w", encoding="ascii") as fh:
        if fmt is GraphFormat.EDGE_LIST:
            fh.write(f"{graph.n} {graph.m}\n")
            edges = graph.edges()
            out = "\n".join(f"{u} {v}" for u, v in edges.tolist())
            if out:
                fh.write(out + "\n")
        else:
            fh.write("graph_for_greach\n")
            fh.write(f"{graph.n}\n")
            for u in range(graph.n):
                succs = " ".join(str(v) for v in graph.out_neighbors(u).tolist())
                fh.write(f"{u}: {succs} #\n" if succs else f"{u}: #\n")
