"""Backend dispatch for the hot counting kernels.

The greedy optimizer spends nearly all its time counting connected pairs
in residual graphs and counting nodes within reach of a candidate set.
Two interchangeable backends implement those counts over the same CSR
adjacency arrays:

- ``numba``: ``@njit``-compiled BFS kernels (default when importable)
- ``numpy``: vectorized label-propagation / frontier-expansion fallback

Selection is via the ``KPKIT_BACKEND`` environment variable (``numba``,
``numpy``, or ``auto``). Both backends return identical integers, so
optimizer results do not depend on the choice.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import InvalidConfig

BACKEND_ENV_VAR = "KPKIT_BACKEND"


def _resolve(name: str):
    if name in ("", "auto"):
        try:
            from . import numba_backend

            return numba_backend
        except ImportError:
            from . import numpy_backend

            return numpy_backend
    if name == "numba":
        from . import numba_backend

        return numba_backend
    if name == "numpy":
        from . import numpy_backend

        return numpy_backend
    raise InvalidConfig(f"unsupported {BACKEND_ENV_VAR} value: {name!r}")


_backend = _resolve(os.environ.get(BACKEND_ENV_VAR, "auto").strip().lower())


def set_backend(name: str) -> None:
    """Swap the active backend (used by benchmarks and tests)."""
    global _backend
    _backend = _resolve(name)


def backend_name() -> str:
    return _backend.NAME


def connected_pair_count(indptr: np.ndarray, indices: np.ndarray, removed: np.ndarray) -> int:
    """Ordered pairs (u, v), u != v, connected in the graph minus ``removed``.

    Equals sum over residual component sizes s of s*(s-1).
    """
    return _backend.connected_pair_count(indptr, indices, removed)


def reach_count(indptr: np.ndarray, indices: np.ndarray, member: np.ndarray, m: int) -> int:
    """Number of nodes within ``m`` hops of the member set (members included)."""
    return _backend.reach_count(indptr, indices, member, m)


def warmup() -> None:
    """Trigger JIT compilation on a tiny graph so timed runs stay honest."""
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    removed = np.zeros(2, dtype=np.bool_)
    member = np.array([True, False])
    connected_pair_count(indptr, indices, removed)
    reach_count(indptr, indices, member, 1)
