"""Synthetic datasets: bridged-cluster scenarios and seeded random graphs.

The animator scenario plants known ground truth: dense clusters that only
touch each other through dedicated animator nodes. Removing the animators
is guaranteed to shatter the network, which gives analytically forced
expectations for the optimizers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidConfig
from .graph import Graph, NodeId, build_graph
from .ingest import (
    ROLE_PARTICIPANT,
    ROLE_SEEDED_DEVELOPER,
    Dataset,
    InteractionRecord,
    RoleTable,
    interaction_log_to_csv,
    make_dataset,
    roles_to_csv,
)


@dataclass(frozen=True)
class ScenarioConfig:
    clusters: int
    cluster_size: int
    animators: int
    intra_cluster_density: float = 0.8
    rng_seed: int = 0

    def validate(self) -> None:
        if self.clusters < 2:
            raise InvalidConfig("clusters must be >= 2")
        if self.cluster_size < 2:
            raise InvalidConfig("cluster size must be >= 2")
        if self.animators < 1:
            raise InvalidConfig("animators must be >= 1")
        if not 0 < self.intra_cluster_density <= 1:
            raise InvalidConfig("intra-cluster density must be in (0, 1]")
        if not 0 <= self.rng_seed < 2**64:
            raise InvalidConfig("rng seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class ScenarioTruth:
    dataset: Dataset
    planted_animators: tuple[NodeId, ...]


def _pad(i: int, count: int) -> str:
    return f"{i:0{max(2, len(str(count - 1)))}d}"


def generate_animator_scenario(cfg: ScenarioConfig) -> ScenarioTruth:
    """Clusters bridged only by planted animator nodes.

    Each cluster gets a random spanning tree first (so it is connected at
    any density), then the remaining intra-cluster pairs are filled in at
    ``intra_cluster_density``. Each animator links to exactly one uniformly
    chosen node in every cluster; there are no other inter-cluster edges.
    Animators are labeled seeded developers, everyone else a participant.
    """
    cfg.validate()
    rng = np.random.default_rng(cfg.rng_seed)
    nodes: list[NodeId] = []
    edges: list[tuple[NodeId, NodeId]] = []
    cluster_members: list[list[NodeId]] = []
    for ci in range(cfg.clusters):
        members = [
            f"c{_pad(ci, cfg.clusters)}n{_pad(j, cfg.cluster_size)}"
            for j in range(cfg.cluster_size)
        ]
        nodes.extend(members)
        cluster_members.append(members)
        tree: set[tuple[int, int]] = set()
        for j in range(1, cfg.cluster_size):
            parent = int(rng.integers(0, j))
            tree.add((parent, j))
            edges.append((members[parent], members[j]))
        for i in range(cfg.cluster_size):
            for j in range(i + 1, cfg.cluster_size):
                if (i, j) in tree:
                    continue
                if rng.random() < cfg.intra_cluster_density:
                    edges.append((members[i], members[j]))
    animators = [f"dev{_pad(t, cfg.animators)}" for t in range(cfg.animators)]
    nodes.extend(animators)
    for animator in animators:
        for members in cluster_members:
            anchor = int(rng.integers(0, cfg.cluster_size))
            edges.append((animator, members[anchor]))
    graph = build_graph(nodes, edges)
    roles = RoleTable(
        {v: ROLE_SEEDED_DEVELOPER if v in animators else ROLE_PARTICIPANT for v in graph.nodes}
    )
    dataset = make_dataset(
        graph, roles, provenance=f"synthetic animator scenario (seed={cfg.rng_seed})"
    )
    return ScenarioTruth(dataset=dataset, planted_animators=tuple(animators))


def generate_random_graph(n: int, p: float, rng_seed: int) -> Graph:
    """Seeded Erdos-Renyi G(n, p) over zero-padded node labels."""
    if n < 2:
        raise InvalidConfig("n must be >= 2")
    if not 0 <= p <= 1:
        raise InvalidConfig("p must be in [0, 1]")
    if not 0 <= rng_seed < 2**64:
        raise InvalidConfig("rng seed must be a 64-bit unsigned integer")
    rng = np.random.default_rng(rng_seed)
    names = [f"n{_pad(i, n)}" for i in range(n)]
    edges = [
        (names[i], names[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return build_graph(names, edges)


def dataset_to_interaction_records(dataset: Dataset) -> list[InteractionRecord]:
    """One wave per edge; the binary network round-trips exactly."""
    return [InteractionRecord(a, b, "wave") for a, b in dataset.graph.edges]


def write_scenario(truth: ScenarioTruth, out_dir: Path | str) -> list[Path]:
    """Write interactions.csv, roles.csv, and truth.json for a scenario.

    The CSV files use the ingestion module's formats, so a written scenario
    feeds straight back through the full analysis pipeline.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    interactions = out / "interactions.csv"
    roles = out / "roles.csv"
    truth_file = out / "truth.json"
    interactions.write_text(
        interaction_log_to_csv(dataset_to_interaction_records(truth.dataset)),
        encoding="utf-8",
        newline="",
    )
    roles.write_text(roles_to_csv(truth.dataset.roles), encoding="utf-8", newline="")
    truth_file.write_text(
        json.dumps(
            {"planted_animators": list(truth.planted_animators)},
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    return [interactions, roles, truth_file]


def scenario_config_to_dict(cfg: ScenarioConfig) -> dict:
    return asdict(cfg)
