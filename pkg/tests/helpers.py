"""Shared graph builders and independent oracles for the test suite.

The oracles deliberately avoid the package's component/reach code paths:
they walk plain dict adjacency with per-pair BFS so they can referee the
fast implementations.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from kpkit.graph import Graph, build_graph


def path_graph(ids: str = "abcde") -> Graph:
    nodes = list(ids)
    return build_graph(nodes, list(zip(nodes, nodes[1:])))


def star_graph(center: str = "c", leaves: tuple[str, ...] = ("l1", "l2", "l3", "l4")) -> Graph:
    return build_graph([center, *leaves], [(center, leaf) for leaf in leaves])


def triangle_graph() -> Graph:
    return build_graph("abc", [("a", "b"), ("b", "c"), ("a", "c")])


def complete_graph(n: int) -> Graph:
    names = [f"k{i}" for i in range(n)]
    return build_graph(names, [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)])


def isolates_graph(n: int) -> Graph:
    return build_graph([f"i{i}" for i in range(n)], [])


def barbell_graph() -> Graph:
    """Two triangles joined through a single bridge node x.

    x has degree 2 while a1/b1 have degree 3, so the best single
    fragmenting removal (x) is not the degree maximum.
    """
    edges = [
        ("a1", "a2"), ("a1", "a3"), ("a2", "a3"),
        ("b1", "b2"), ("b1", "b3"), ("b2", "b3"),
        ("x", "a1"), ("x", "b1"),
    ]
    return build_graph(["a1", "a2", "a3", "b1", "b2", "b3", "x"], edges)


def adjacency(g: Graph) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in g.nodes}
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def bfs_reachable(adj: dict[str, set[str]], start: str) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def pairwise_fragmentation(g: Graph) -> float:
    """Brute-force oracle: fraction of unordered pairs with no path."""
    nodes = list(g.nodes)
    n = len(nodes)
    assert n >= 2
    adj = adjacency(g)
    unreachable = 0
    for i in range(n):
        reach = bfs_reachable(adj, nodes[i])
        for j in range(i + 1, n):
            if nodes[j] not in reach:
                unreachable += 1
    return float(Fraction(unreachable, n * (n - 1) // 2))


def reach_within(g: Graph, members: set[str], m: int) -> int:
    """Oracle count of nodes within m hops of the member set."""
    adj = adjacency(g)
    dist = {v: 0 for v in members}
    queue = deque(members)
    while queue:
        v = queue.popleft()
        if dist[v] == m:
            continue
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return len(dist)
