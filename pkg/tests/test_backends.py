"""Parity between the numba kernels and the pure-numpy fallback."""

from __future__ import annotations

import numpy as np
import pytest

from kpkit import _accel
from kpkit._accel import numba_backend, numpy_backend
from kpkit.errors import InvalidConfig
from kpkit.graph import connected_components, fragmentation, remove_nodes
from kpkit.synth import generate_random_graph

from helpers import pairwise_fragmentation, reach_within

BACKENDS = [numba_backend, numpy_backend]


def _connected_pairs_oracle(g, removed_ids):
    residual = remove_nodes(g, removed_ids)
    return sum(s * (s - 1) for s in connected_components(residual).sizes)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
def test_connected_pair_count_matches_oracle(backend):
    for seed in range(25):
        g = generate_random_graph(10, 0.25, seed)
        indptr, indices = g._csr
        rng = np.random.default_rng(seed)
        removed = rng.random(10) < 0.3
        removed_ids = {g.nodes[i] for i in np.flatnonzero(removed)}
        got = backend.connected_pair_count(indptr, indices, removed)
        assert got == _connected_pairs_oracle(g, removed_ids)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.NAME)
def test_reach_count_matches_oracle(backend):
    for seed in range(25):
        g = generate_random_graph(10, 0.25, seed)
        indptr, indices = g._csr
        rng = np.random.default_rng(seed + 1000)
        member = rng.random(10) < 0.25
        member[int(rng.integers(0, 10))] = True  # keep nonempty
        members = {g.nodes[i] for i in np.flatnonzero(member)}
        for m in (1, 2, 3):
            got = backend.reach_count(indptr, indices, member, m)
            assert got == reach_within(g, members, m)


def test_backends_agree_exactly():
    for seed in range(15):
        g = generate_random_graph(12, 0.3, seed)
        indptr, indices = g._csr
        rng = np.random.default_rng(seed)
        mask = rng.random(12) < 0.4
        assert numba_backend.connected_pair_count(
            indptr, indices, mask
        ) == numpy_backend.connected_pair_count(indptr, indices, mask)
        mask[0] = True
        assert numba_backend.reach_count(indptr, indices, mask, 2) == numpy_backend.reach_count(
            indptr, indices, mask, 2
        )


def test_empty_and_full_masks():
    g = generate_random_graph(6, 0.5, 3)
    indptr, indices = g._csr
    all_removed = np.ones(6, dtype=np.bool_)
    none_removed = np.zeros(6, dtype=np.bool_)
    expected = sum(s * (s - 1) for s in connected_components(g).sizes)
    for backend in BACKENDS:
        assert backend.connected_pair_count(indptr, indices, all_removed) == 0
        assert backend.connected_pair_count(indptr, indices, none_removed) == expected
        assert backend.reach_count(indptr, indices, np.ones(6, dtype=np.bool_), 1) == 6


def test_fragmentation_matches_pairwise_oracle():
    g = generate_random_graph(9, 0.2, 11)
    assert fragmentation(g) == pairwise_fragmentation(g)


def test_dispatch_switching():
    original = _accel.backend_name()
    try:
        _accel.set_backend("numpy")
        assert _accel.backend_name() == "numpy"
        _accel.set_backend("numba")
        assert _accel.backend_name() == "numba"
        with pytest.raises(InvalidConfig):
            _accel.set_backend("fortran")
    finally:
        _accel.set_backend(original)
