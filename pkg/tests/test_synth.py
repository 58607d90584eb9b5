from __future__ import annotations

import pytest

from kpkit.errors import InvalidConfig
from kpkit.graph import connected_components, fragmentation, remove_nodes
from kpkit.keyplayer import KpMethod, brute_force_key_players, fit_neg
from kpkit.ingest import parse_interaction_log, parse_roles, interaction_network
from kpkit.synth import (
    ScenarioConfig,
    generate_animator_scenario,
    generate_random_graph,
    write_scenario,
)


class TestAnimatorScenario:
    def test_large_scenario_structure(self):
        cfg = ScenarioConfig(clusters=5, cluster_size=6, animators=2, rng_seed=42)
        truth = generate_animator_scenario(cfg)
        g = truth.dataset.graph
        assert g.node_count == 32
        assert len(connected_components(g).sizes) == 1
        residual = remove_nodes(g, truth.planted_animators)
        assert len(connected_components(residual).sizes) >= 5

    def test_minimal_forced_structure(self):
        cfg = ScenarioConfig(
            clusters=2, cluster_size=2, animators=1, intra_cluster_density=1.0, rng_seed=0
        )
        truth = generate_animator_scenario(cfg)
        g = truth.dataset.graph
        assert g.node_count == 5
        # one edge inside each cluster plus one animator link per cluster
        assert g.edge_count == 4
        (dev,) = truth.planted_animators
        assert g.degree(dev) == 2

    def test_deterministic(self):
        cfg = ScenarioConfig(clusters=3, cluster_size=4, animators=2, rng_seed=9)
        assert generate_animator_scenario(cfg) == generate_animator_scenario(cfg)

    def test_animators_labeled_seeded_developers(self):
        truth = generate_animator_scenario(
            ScenarioConfig(clusters=3, cluster_size=3, animators=2, rng_seed=5)
        )
        roles = truth.dataset.roles
        for dev in truth.planted_animators:
            assert roles.is_seeded_developer(dev)
        others = set(truth.dataset.graph.nodes) - set(truth.planted_animators)
        assert not any(roles.is_seeded_developer(v) for v in others)

    def test_planted_removal_beats_baseline_fragmentation(self):
        for seed in range(15):
            truth = generate_animator_scenario(
                ScenarioConfig(clusters=3, cluster_size=4, animators=1, rng_seed=seed)
            )
            g = truth.dataset.graph
            assert fit_neg(g, set(truth.planted_animators)) > fragmentation(g)

    def test_brute_force_recovers_planted_set_when_small(self):
        for seed in range(10):
            truth = generate_animator_scenario(
                ScenarioConfig(clusters=3, cluster_size=3, animators=1, rng_seed=seed)
            )
            chosen, _ = brute_force_key_players(truth.dataset.graph, KpMethod.NEG, 1)
            assert chosen == truth.planted_animators

    def test_invalid_configs(self):
        with pytest.raises(InvalidConfig):
            ScenarioConfig(clusters=1, cluster_size=3, animators=1).validate()
        with pytest.raises(InvalidConfig):
            ScenarioConfig(clusters=2, cluster_size=1, animators=1).validate()
        with pytest.raises(InvalidConfig):
            ScenarioConfig(clusters=2, cluster_size=3, animators=0).validate()
        with pytest.raises(InvalidConfig):
            ScenarioConfig(clusters=2, cluster_size=3, animators=1, intra_cluster_density=0.0).validate()


class TestRandomGraph:
    def test_p_zero_gives_isolates(self):
        g = generate_random_graph(5, 0.0, 1)
        assert g.node_count == 5
        assert g.edge_count == 0

    def test_p_one_gives_complete(self):
        g = generate_random_graph(4, 1.0, 1)
        assert g.edge_count == 6

    def test_deterministic(self):
        assert generate_random_graph(10, 0.3, 7) == generate_random_graph(10, 0.3, 7)

    def test_invalid_args(self):
        with pytest.raises(InvalidConfig):
            generate_random_graph(1, 0.5, 0)
        with pytest.raises(InvalidConfig):
            generate_random_graph(5, 1.5, 0)


def test_written_scenario_feeds_back_through_ingest(tmp_path):
    truth = generate_animator_scenario(
        ScenarioConfig(clusters=3, cluster_size=4, animators=2, rng_seed=21)
    )
    files = write_scenario(truth, tmp_path)
    assert [f.name for f in files] == ["interactions.csv", "roles.csv", "truth.json"]
    with open(tmp_path / "interactions.csv", encoding="utf-8", newline="") as fh:
        records = parse_interaction_log(fh, "csv", source="interactions.csv")
    rebuilt = interaction_network(records)
    assert rebuilt == truth.dataset.graph
    with open(tmp_path / "roles.csv", encoding="utf-8", newline="") as fh:
        roles = parse_roles(fh, source="roles.csv")
    assert roles == truth.dataset.roles
