"""Pure-numpy counting kernels (fallback backend).

Connected pairs use min-label propagation with pointer jumping; reach uses
frontier expansion. Slower than the JIT kernels on tiny graphs because of
per-op overhead, but dependency-free beyond numpy.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def _edge_endpoints(indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rows = np.repeat(np.arange(indptr.shape[0] - 1, dtype=np.int64), np.diff(indptr))
    return rows, indices


def connected_pair_count(indptr: np.ndarray, indices: np.ndarray, removed: np.ndarray) -> int:
    n = removed.shape[0]
    keep = ~removed
    if not keep.any():
        return 0
    rows, cols = _edge_endpoints(indptr, indices)
    live = keep[rows] & keep[cols]
    rows = rows[live]
    cols = cols[live]
    labels = np.arange(n, dtype=np.int64)
    while True:
        prev = labels.copy()
        if rows.size:
            np.minimum.at(labels, rows, labels[cols])
        labels = np.minimum(labels, labels[labels])  # pointer jumping
        if np.array_equal(labels, prev):
            break
    _, counts = np.unique(labels[keep], return_counts=True)
    return int((counts * (counts - 1)).sum())


def reach_count(indptr: np.ndarray, indices: np.ndarray, member: np.ndarray, m: int) -> int:
    n = member.shape[0]
    rows, cols = _edge_endpoints(indptr, indices)
    visited = member.copy()
    frontier = member.copy()
    for _ in range(m):
        if not frontier.any():
            break
        sel = frontier[rows]
        nxt = np.zeros(n, dtype=np.bool_)
        nxt[cols[sel]] = True
        nxt &= ~visited
        if not nxt.any():
            break
        visited |= nxt
        frontier = nxt
    return int(np.count_nonzero(visited))
