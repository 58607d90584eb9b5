"""Key-player fit functions and optimizers.

Two variants of the key-player problem are supported:

- NEG: find a k-set whose removal maximizes fragmentation of the residual
  network (the "bridge" animators holding components together).
- POS: find a k-set that puts the largest share of the network within m
  hops (the "broadcast" positions).

The optimizer is a greedy single-swap ascent with seeded random restarts.
All internal comparisons use integer scores (connected-pair counts, reach
counts), so results are exactly reproducible: same graph, method, and
config always give the same answer, regardless of backend or thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import _accel
from .errors import DegenerateResidual, EmptySet, InvalidConfig, TooLarge, UnknownNode
from .graph import Graph, NodeId, fragmentation, remove_nodes

THREADS_ENV_VAR = "KPKIT_THREADS"

BRUTE_FORCE_CAP = 1_000_000


class KpMethod(Enum):
    NEG = "neg"
    POS = "pos"


@dataclass(frozen=True)
class KpConfig:
    """Optimizer settings.

    ``k`` is the key-player set size; ``reach_distance_m`` only affects POS.
    ``max_sweeps`` is a safety cap -- strictly-improving swaps terminate on
    their own in practice.
    """

    k: int
    rng_seed: int = 0
    restarts: int = 20
    reach_distance_m: int = 1
    max_sweeps: int = 1000

    def validate(self) -> None:
        if self.k < 1:
            raise InvalidConfig("k must be >= 1")
        if self.restarts < 1:
            raise InvalidConfig("restarts must be >= 1")
        if self.reach_distance_m < 1:
            raise InvalidConfig("reach distance m must be >= 1")
        if self.max_sweeps < 1:
            raise InvalidConfig("max sweeps must be >= 1")
        if not 0 <= self.rng_seed < 2**64:
            raise InvalidConfig("rng seed must be a 64-bit unsigned integer")

    def validate_for(self, g: Graph) -> None:
        self.validate()
        if self.k >= g.node_count:
            raise InvalidConfig(
                f"k must be smaller than the node count ({self.k} >= {g.node_count})"
            )


@dataclass(frozen=True)
class KeyPlayerResult:
    method: KpMethod
    chosen: tuple[NodeId, ...]
    fit: float
    restarts_run: int
    sweeps_per_restart: tuple[int, ...]
    seed_used: int


@dataclass(frozen=True)
class FragmentationDelta:
    initial: float
    final: float
    change: float


def fit_neg(g: Graph, removed: set[NodeId] | frozenset[NodeId] | tuple[NodeId, ...]) -> float:
    """Fragmentation of the graph after removing ``removed``.

    The empty set gives the fragmentation of the graph itself.
    """
    residual = remove_nodes(g, removed)
    if residual.node_count < 2:
        raise DegenerateResidual("removal leaves fewer than 2 nodes")
    return fragmentation(residual)


def fit_pos(g: Graph, members: set[NodeId] | frozenset[NodeId] | tuple[NodeId, ...], m: int = 1) -> float:
    """Fraction of all nodes within ``m`` hops of the member set.

    Members count as reached (distance 0).
    """
    chosen = set(members)
    if not chosen:
        raise EmptySet("reach set must be nonempty")
    if m < 1:
        raise InvalidConfig("reach distance m must be >= 1")
    for v in chosen:
        if not g.has_node(v):
            raise UnknownNode(f"node {v!r} is not in the graph")
    indptr, indices = g._csr
    mask = np.zeros(g.node_count, dtype=np.bool_)
    index = g._index
    for v in chosen:
        mask[index[v]] = True
    count = _accel.reach_count(indptr, indices, mask, m)
    return float(Fraction(count, g.node_count))


def removal_impact(g: Graph, removed: set[NodeId] | tuple[NodeId, ...]) -> FragmentationDelta:
    """Initial/final/change fragmentation triple for a removal set.

    The change is not clamped; it can be negative.
    """
    initial = fragmentation(g)
    final = fit_neg(g, removed)
    return FragmentationDelta(initial=initial, final=final, change=final - initial)


def _thread_cap(restarts: int) -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InvalidConfig(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidConfig(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
    return min(value, restarts)


def _greedy_restart(
    indptr: np.ndarray,
    indices: np.ndarray,
    n: int,
    k: int,
    method: KpMethod,
    m: int,
    max_sweeps: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, int, int]:
    """One seeded restart of greedy swap ascent.

    Returns (member mask, integer score, improving swaps applied). Scores
    are connected-pair counts for NEG (lower is better) and reach counts
    for POS (higher is better). Each sweep evaluates every (u in S,
    v outside S) swap and applies the best strictly-improving one; ties on
    improvement break toward the lexicographically smallest (u, v), which
    the ascending scan order delivers for free.
    """
    neg = method is KpMethod.NEG

    def score(mask: np.ndarray) -> int:
        if neg:
            return _accel.connected_pair_count(indptr, indices, mask)
        return _accel.reach_count(indptr, indices, mask, m)

    def better(candidate: int, incumbent: int) -> bool:
        return candidate < incumbent if neg else candidate > incumbent

    start = rng.choice(n, size=k, replace=False)
    mask = np.zeros(n, dtype=np.bool_)
    mask[start] = True
    current = score(mask)
    sweeps = 0
    while sweeps < max_sweeps:
        members = np.flatnonzero(mask)
        outsiders = np.flatnonzero(~mask)
        best_u = -1
        best_v = -1
        best_score = current
        for u in members:
            mask[u] = False
            for v in outsiders:
                mask[v] = True
                sc = score(mask)
                mask[v] = False
                if better(sc, best_score):
                    best_score = sc
                    best_u = int(u)
                    best_v = int(v)
            mask[u] = True
        if best_u < 0:
            break
        mask[best_u] = False
        mask[best_v] = True
        current = best_score
        sweeps += 1
    return mask, current, sweeps


def select_key_players(g: Graph, method: KpMethod, cfg: KpConfig) -> KeyPlayerResult:
    """Best k-set across seeded greedy restarts.

    Deterministic: each restart draws from its own substream spawned from
    ``cfg.rng_seed``, and the cross-restart reduction (best score, then
    lexicographically smallest set) is order-independent, so the result is
    identical under any restart schedule or thread count.
    """
    cfg.validate_for(g)
    n = g.node_count
    if method is KpMethod.NEG and n - cfg.k < 2:
        raise DegenerateResidual(f"k={cfg.k} leaves fewer than 2 of {n} nodes")
    indptr, indices = g._csr

    streams = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.restarts)

    def run(i: int) -> tuple[np.ndarray, int, int]:
        return _greedy_restart(
            indptr, indices, n, cfg.k, method, cfg.reach_distance_m,
            cfg.max_sweeps, np.random.default_rng(streams[i]),
        )

    threads = _thread_cap(cfg.restarts)
    if threads == 1:
        outcomes = [run(i) for i in range(cfg.restarts)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, range(cfg.restarts)))

    neg = method is KpMethod.NEG
    best_ids: tuple[NodeId, ...] | None = None
    best_score = 0
    sweeps_per_restart = []
    for mask, sc, sweeps in outcomes:
        sweeps_per_restart.append(sweeps)
        ids = tuple(g.nodes[i] for i in np.flatnonzero(mask))
        if (
            best_ids is None
            or (sc < best_score if neg else sc > best_score)
            or (sc == best_score and ids < best_ids)
        ):
            best_ids = ids
            best_score = sc
    assert best_ids is not None
    return KeyPlayerResult(
        method=method,
        chosen=best_ids,
        fit=_score_to_fit(method, best_score, n, cfg.k),
        restarts_run=cfg.restarts,
        sweeps_per_restart=tuple(sweeps_per_restart),
        seed_used=cfg.rng_seed,
    )


def _score_to_fit(method: KpMethod, score: int, n: int, k: int) -> float:
    if method is KpMethod.NEG:
        residual = n - k
        return float(1 - Fraction(score, residual * (residual - 1)))
    return float(Fraction(score, n))


def brute_force_key_players(
    g: Graph, method: KpMethod, k: int, m: int = 1
) -> tuple[tuple[NodeId, ...], float]:
    """Exhaustive optimum over all k-subsets; the oracle the greedy is
    checked against.

    Ties resolve to the lexicographically smallest set. Refuses to run when
    C(n, k) exceeds the safety cap.
    """
    n = g.node_count
    if k < 1 or k >= n:
        raise InvalidConfig(f"k must be in [1, {n - 1}]")
    if m < 1:
        raise InvalidConfig("reach distance m must be >= 1")
    if method is KpMethod.NEG and n - k < 2:
        raise DegenerateResidual(f"k={k} leaves fewer than 2 of {n} nodes")
    if comb(n, k) > BRUTE_FORCE_CAP:
        raise TooLarge(f"C({n},{k}) exceeds the {BRUTE_FORCE_CAP} evaluation cap")
    indptr, indices = g._csr
    neg = method is KpMethod.NEG
    mask = np.zeros(n, dtype=np.bool_)
    best_subset: tuple[int, ...] | None = None
    best_score = 0
    for subset in combinations(range(n), k):  # ascending = lexicographic by node id
        mask[:] = False
        mask[list(subset)] = True
        if neg:
            sc = _accel.connected_pair_count(indptr, indices, mask)
        else:
            sc = _accel.reach_count(indptr, indices, mask, m)
        if best_subset is None or (sc < best_score if neg else sc > best_score):
            best_subset = subset
            best_score = sc
    assert best_subset is not None
    chosen = tuple(g.nodes[i] for i in best_subset)
    return chosen, _score_to_fit(method, best_score, n, k)


def auto_k_by_reach(g: Graph, cfg: KpConfig, threshold: float) -> int:
    """Smallest k whose greedy POS reach meets ``threshold``.

    Scans k upward from 1; k is capped at node_count - 2 so the same k
    stays usable for NEG. If the cap is hit without meeting the threshold,
    the cap is returned (best effort).
    """
    if not 0 < threshold <= 1:
        raise InvalidConfig("reach threshold must be in (0, 1]")
    if g.node_count < 3:
        raise InvalidConfig("auto-k needs at least 3 nodes")
    cap = g.node_count - 2
    for k in range(1, cap + 1):
        result = select_key_players(g, KpMethod.POS, replace(cfg, k=k))
        if result.fit >= threshold:
            return k
    return cap
