"""Undirected simple graphs and whole-network measures.

Graphs are immutable values: every operation returns a new graph, so they
are safe to share across threads. All orderings (node lists, neighbor
lists, component listings) are by ascending node id so repeated runs
produce identical output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import (
    DegenerateGraph,
    EmptySet,
    SelfLoop,
    UnknownEndpoint,
    UnknownNode,
)

NodeId = str


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over string node identifiers.

    ``nodes`` is sorted ascending; ``edges`` holds each undirected edge once
    as an ``(a, b)`` pair with ``a < b``, sorted. Use :func:`build_graph`,
    which validates and normalizes raw input, rather than constructing
    directly.
    """

    nodes: tuple[NodeId, ...]
    edges: tuple[tuple[NodeId, NodeId], ...]

    @cached_property
    def _adjacency(self) -> dict[NodeId, tuple[NodeId, ...]]:
        adj: dict[NodeId, list[NodeId]] = {v: [] for v in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def _index(self) -> dict[NodeId, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed adjacency over node indices, in sorted-node order."""
        index = self._index
        indptr = np.zeros(len(self.nodes) + 1, dtype=np.int64)
        for i, v in enumerate(self.nodes):
            indptr[i + 1] = indptr[i] + len(self._adjacency[v])
        indices = np.empty(int(indptr[-1]), dtype=np.int64)
        pos = 0
        for v in self.nodes:
            for w in self._adjacency[v]:
                indices[pos] = index[w]
                pos += 1
        return indptr, indices

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_node(self, v: NodeId) -> bool:
        return v in self._index

    def neighbors(self, v: NodeId) -> tuple[NodeId, ...]:
        try:
            return self._adjacency[v]
        except KeyError:
            raise UnknownNode(f"node {v!r} is not in the graph") from None

    def degree(self, v: NodeId) -> int:
        return len(self.neighbors(v))


@dataclass(frozen=True)
class ComponentPartition:
    """Disjoint connected components covering all nodes, plus their sizes.

    Components are sorted by their smallest node id; nodes within a
    component are sorted ascending. ``sizes[i] == len(components[i])``.
    """

    components: tuple[tuple[NodeId, ...], ...]
    sizes: tuple[int, ...]


def build_graph(nodes: Iterable[NodeId], edges: Iterable[tuple[NodeId, NodeId]]) -> Graph:
    """Build a validated simple undirected graph.

    Duplicate edges (in either orientation) collapse to one; self-loops and
    edges touching unknown nodes are rejected. Isolates are kept.
    """
    node_set = set(nodes)
    for v in node_set:
        if not isinstance(v, str) or not v:
            raise ValueError(f"node ids must be non-empty strings, got {v!r}")
    edge_set: set[tuple[NodeId, NodeId]] = set()
    for a, b in edges:
        if a == b:
            raise SelfLoop(f"self-loop on node {a!r}")
        if a not in node_set:
            raise UnknownEndpoint(f"edge endpoint {a!r} is not in the node set")
        if b not in node_set:
            raise UnknownEndpoint(f"edge endpoint {b!r} is not in the node set")
        edge_set.add((a, b) if a < b else (b, a))
    return Graph(nodes=tuple(sorted(node_set)), edges=tuple(sorted(edge_set)))


def merge_graphs(*graphs: Graph) -> Graph:
    """Union of node and edge sets across graphs."""
    nodes: set[NodeId] = set()
    edges: set[tuple[NodeId, NodeId]] = set()
    for g in graphs:
        nodes.update(g.nodes)
        edges.update(g.edges)
    return build_graph(nodes, edges)


def connected_components(g: Graph) -> ComponentPartition:
    """Partition the node set into maximal connected components."""
    seen: set[NodeId] = set()
    components: list[tuple[NodeId, ...]] = []
    for start in g.nodes:  # ascending, so components come out ordered
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(tuple(sorted(comp)))
    return ComponentPartition(
        components=tuple(components),
        sizes=tuple(len(c) for c in components),
    )


def fragmentation(g: Graph) -> float:
    """Proportion of unordered node pairs with no connecting path.

    1 - sum_k s_k (s_k - 1) / (n (n - 1)) over component sizes s_k.
    0 means a single connected component, 1 means no edges at all.
    Computed with exact rational arithmetic and rounded once to float.
    """
    n = g.node_count
    if n < 2:
        raise DegenerateGraph("fragmentation needs at least 2 nodes")
    sizes = connected_components(g).sizes
    connected_pairs = sum(s * (s - 1) for s in sizes)
    return float(1 - Fraction(connected_pairs, n * (n - 1)))


def degree_centrality(g: Graph) -> dict[NodeId, int]:
    """Map each node to its edge count."""
    return {v: len(g.neighbors(v)) for v in g.nodes}


def degree_ranking(g: Graph) -> list[NodeId]:
    """Nodes by descending degree, ties broken by ascending node id."""
    return sorted(g.nodes, key=lambda v: (-g.degree(v), v))


def graph_density(g: Graph) -> float:
    """Edge count over the n(n-1)/2 possible edges."""
    n = g.node_count
    if n < 2:
        raise DegenerateGraph("density needs at least 2 nodes")
    return float(Fraction(g.edge_count, n * (n - 1) // 2))


def bfs_distances(g: Graph, sources: Iterable[NodeId]) -> dict[NodeId, int | None]:
    """Minimum hop distance from the source set to every node.

    Source nodes are at distance 0; unreachable nodes map to ``None``.
    """
    src = sorted(set(sources))
    if not src:
        raise EmptySet("source set must be nonempty")
    for v in src:
        if not g.has_node(v):
            raise UnknownNode(f"source node {v!r} is not in the graph")
    dist: dict[NodeId, int | None] = {v: None for v in g.nodes}
    queue: deque[NodeId] = deque()
    for v in src:
        dist[v] = 0
        queue.append(v)
    while queue:
        v = queue.popleft()
        d = dist[v]
        assert d is not None
        for w in g.neighbors(v):
            if dist[w] is None:
                dist[w] = d + 1
                queue.append(w)
    return dist


def remove_nodes(g: Graph, removed: Iterable[NodeId]) -> Graph:
    """Residual graph after deleting ``removed`` and their incident edges."""
    gone = set(removed)
    for v in gone:
        if not g.has_node(v):
            raise UnknownNode(f"cannot remove {v!r}: not in the graph")
    nodes = [v for v in g.nodes if v not in gone]
    edges = [(a, b) for a, b in g.edges if a not in gone and b not in gone]
    return Graph(nodes=tuple(nodes), edges=tuple(edges))
