"""Undirected simple graphs and the summary statistics used to compare networks.

Graphs are immutable, live on dense integer node ids ``0..n-1`` and store
their edges both as a canonical sorted array and as a CSR adjacency
structure.  All-pairs distances are computed by breadth-first search from
every node simultaneously, with reachability sets packed into uint64
bitsets; this keeps the distance summary of a 1000-node graph in the
10 ms range, cheap enough to measure every network of a large sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
import scipy.sparse as sp


class GraphConstructionError(ValueError):
    """Edge list cannot form a valid simple graph (bad id or self-loop)."""


class MetricDomainError(ValueError):
    """Metric undefined for this input (fewer than 2 nodes)."""


@dataclass(frozen=True)
class GraphMetrics:
    """Summary statistics of one network.

    ``avg_path_length`` and ``diameter`` are ``None`` when the graph is
    disconnected; disconnection is reported loudly rather than averaged
    away per component.
    """

    node_count: int
    edge_count: int
    density: float
    avg_path_length: float | None
    global_clustering: float
    diameter: int | None
    connected: bool


class Graph:
    """Immutable undirected simple graph.

    Construction rejects self-loops and out-of-range ids and collapses
    duplicate pairs to a single edge.  Adjacency is symmetric by
    construction and neighbor lists are sorted ascending.
    """

    __slots__ = ("node_count", "edge_count", "_u", "_v", "_indptr", "_indices",
                 "_adjacency", "_distance_summary")

    def __init__(self, node_count: int, edge_list: Iterable[tuple[int, int]]):
        node_count = int(node_count)
        if node_count < 0:
            raise GraphConstructionError("node_count must be non-negative")
        pairs = np.asarray(list(edge_list), dtype=np.int64)
        if pairs.size == 0:
            pairs = pairs.reshape(0, 2)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise GraphConstructionError("edge list must contain (u, v) pairs")
        if pairs.size:
            if pairs.min() < 0 or pairs.max() >= node_count:
                raise GraphConstructionError(
                    f"edge endpoint out of range for node_count={node_count}")
            if (pairs[:, 0] == pairs[:, 1]).any():
                raise GraphConstructionError("self-loops are not allowed")
        u = np.minimum(pairs[:, 0], pairs[:, 1])
        v = np.maximum(pairs[:, 0], pairs[:, 1])
        # Dedupe on the encoded pair; unique() also yields canonical order.
        enc = np.unique(u * node_count + v)
        u = (enc // node_count).astype(np.int64) if node_count else enc
        v = (enc % node_count).astype(np.int64) if node_count else enc
        m = len(enc)

        sym_src = np.concatenate([u, v])
        sym_dst = np.concatenate([v, u])
        order = np.argsort(sym_src * node_count + sym_dst) if node_count else np.arange(0)
        indices = sym_dst[order].astype(np.int64)
        degrees = np.bincount(sym_src, minlength=node_count)
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(degrees, out=indptr[1:])

        self.node_count = node_count
        self.edge_count = m
        self._u = u
        self._v = v
        self._indptr = indptr
        self._indices = indices
        self._adjacency = None
        self._distance_summary = None

    # -- queries ---------------------------------------------------------

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted ascending."""
        return list(zip(self._u.tolist(), self._v.tolist()))

    def neighbors(self, node: int) -> list[int]:
        return self.adjacency[node]

    def degree(self, node: int) -> int:
        return int(self._indptr[node + 1] - self._indptr[node])

    @property
    def adjacency(self) -> list[list[int]]:
        """Per-node sorted neighbor lists (built lazily, then cached)."""
        if self._adjacency is None:
            idx = self._indices.tolist()
            ptr = self._indptr.tolist()
            self._adjacency = [idx[ptr[i]:ptr[i + 1]] for i in range(self.node_count)]
        return self._adjacency

    def csr_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._indptr, self._indices

    def to_scipy(self) -> sp.csr_matrix:
        data = np.ones(len(self._indices), dtype=np.int64)
        return sp.csr_matrix((data, self._indices, self._indptr),
                             shape=(self.node_count, self.node_count))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.node_count == other.node_count
                and np.array_equal(self._u, other._u)
                and np.array_equal(self._v, other._v))

    def __hash__(self):
        return hash((self.node_count, self.edge_count))

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def build_graph(node_count: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build an undirected simple graph, validating ids and rejecting loops."""
    return Graph(node_count, edge_list)


# -- metrics ---------------------------------------------------------------


def density(g: Graph) -> float:
    """Fraction of realized node pairs: 2m / (n (n-1))."""
    n = g.node_count
    if n < 2:
        raise MetricDomainError("density undefined for graphs with fewer than 2 nodes")
    return 2.0 * g.edge_count / (n * (n - 1))


def _distance_summary(g: Graph) -> tuple[float | None, int | None, bool]:
    """(avg_path_length, diameter, connected) via batched bitset BFS.

    One BFS layer expands the reachability bitset of every node at once:
    gather neighbor rows, OR-reduce them per node, OR with the previous
    layer.  The number of still-unreached ordered pairs summed over layers
    equals the total of all shortest-path distances; a fixpoint short of
    full reach means the graph is disconnected.
    """
    if g._distance_summary is not None:
        return g._distance_summary
    n = g.node_count
    if n == 0:
        result = (None, None, True)
    elif n == 1:
        result = (None, 0, True)
    else:
        indptr, indices = g._indptr, g._indices
        words = (n + 63) >> 6
        reach = np.zeros((n, words), dtype=np.uint64)
        ids = np.arange(n)
        reach[ids, ids >> 6] = np.uint64(1) << (ids & 63).astype(np.uint64)
        nnz = len(indices)
        gathered = np.empty((nnz + 1, words), dtype=np.uint64)
        gathered[nnz] = 0
        starts = indptr[:-1].astype(np.intp).copy()
        empty = indptr[:-1] == indptr[1:]
        has_empty = bool(empty.any())
        if has_empty:
            starts[empty] = nnz  # point empty rows at the zero pad
        total_pairs = n * n
        count = int(np.bitwise_count(reach).sum())
        dist_sum = 0
        layer = 0
        while count < total_pairs:
            dist_sum += total_pairs - count
            if nnz:
                np.take(reach, indices, axis=0, out=gathered[:nnz])
                grown = np.bitwise_or.reduceat(gathered, starts, axis=0)
                if has_empty:
                    grown[empty] = 0
                np.bitwise_or(grown, reach, out=grown)
            else:
                grown = reach
            new_count = int(np.bitwise_count(grown).sum())
            if new_count == count:
                result = (None, None, False)
                break
            reach = grown
            count = new_count
            layer += 1
        else:
            result = (dist_sum / (n * (n - 1)), layer, True)
    g._distance_summary = result
    return result


def average_path_length(g: Graph) -> float | None:
    """Mean shortest-path length over all unordered node pairs; None if disconnected."""
    return _distance_summary(g)[0]


def diameter(g: Graph) -> int | None:
    """Largest shortest-path distance; None if disconnected."""
    return _distance_summary(g)[1]


def is_connected(g: Graph) -> bool:
    """True when every node is reachable from node 0 (trivially true for n <= 1)."""
    return _distance_summary(g)[2]


def global_clustering(g: Graph) -> float:
    """Transitivity: 3 * triangles / connected triples, 0.0 when no triples exist."""
    n = g.node_count
    if n == 0 or g.edge_count == 0:
        return 0.0
    deg = np.diff(g._indptr)
    triples2 = int((deg * (deg - 1)).sum())  # 2 * connected triples
    if triples2 == 0:
        return 0.0
    a = g.to_scipy()
    closed = int((a @ a).multiply(a).sum())  # 6 * triangles
    return closed / triples2


def compute_metrics(g: Graph) -> GraphMetrics:
    """Bundle density, path statistics, clustering and connectivity."""
    dens = density(g)  # raises for n < 2
    apl, diam, connected = _distance_summary(g)
    return GraphMetrics(
        node_count=g.node_count,
        edge_count=g.edge_count,
        density=dens,
        avg_path_length=apl,
        global_clustering=global_clustering(g),
        diameter=diam,
        connected=connected,
    )
