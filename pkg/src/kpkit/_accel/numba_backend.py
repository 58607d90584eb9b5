"""JIT-compiled counting kernels (default backend)."""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True, nogil=True)
def _connected_pair_count(indptr, indices, removed):
    n = removed.shape[0]
    visited = removed.copy()
    stack = np.empty(n, dtype=np.int64)
    total = 0
    for start in range(n):
        if visited[start]:
            continue
        visited[start] = True
        stack[0] = start
        top = 1
        size = 0
        while top > 0:
            top -= 1
            u = stack[top]
            size += 1
            for ei in range(indptr[u], indptr[u + 1]):
                w = indices[ei]
                if not visited[w]:
                    visited[w] = True
                    stack[top] = w
                    top += 1
        total += size * (size - 1)
    return total


@njit(cache=True, nogil=True)
def _reach_count(indptr, indices, member, m):
    n = member.shape[0]
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if member[v]:
            dist[v] = 0
            queue[tail] = v
            tail += 1
    count = tail
    while head < tail:
        u = queue[head]
        head += 1
        if dist[u] == m:
            continue
        for ei in range(indptr[u], indptr[u + 1]):
            w = indices[ei]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1
                count += 1
    return count


def connected_pair_count(indptr: np.ndarray, indices: np.ndarray, removed: np.ndarray) -> int:
    return int(_connected_pair_count(indptr, indices, removed))


def reach_count(indptr: np.ndarray, indices: np.ndarray, member: np.ndarray, m: int) -> int:
    return int(_reach_count(indptr, indices, member, m))
