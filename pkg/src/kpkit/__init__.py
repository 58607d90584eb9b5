"""kpkit: key-player analysis for interaction networks.

Builds undirected interaction networks from photo co-appearance or dyadic
interaction logs, finds key-player sets (fragmenting sets and reach sets),
measures removal impact via the fragmentation invariant, and reports role
breakdowns of the identified community animators.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    DegenerateGraph,
    DegenerateResidual,
    DuplicateNode,
    EmptyParticipants,
    EmptySet,
    InvalidConfig,
    KpkitError,
    ParseError,
    SelfInteraction,
    SelfLoop,
    TooLarge,
    UnknownEndpoint,
    UnknownKind,
    UnknownNode,
    UnknownRole,
)
from .graph import (
    ComponentPartition,
    Graph,
    NodeId,
    bfs_distances,
    build_graph,
    connected_components,
    degree_centrality,
    degree_ranking,
    fragmentation,
    graph_density,
    merge_graphs,
    remove_nodes,
)
from .ingest import (
    Dataset,
    InteractionRecord,
    PhotoRecord,
    RoleTable,
    co_appearance_network,
    interaction_network,
    make_dataset,
    parse_interaction_log,
    parse_photo_log,
    parse_roles,
)
from .keyplayer import (
    FragmentationDelta,
    KeyPlayerResult,
    KpConfig,
    KpMethod,
    auto_k_by_reach,
    brute_force_key_players,
    fit_neg,
    fit_pos,
    removal_impact,
    select_key_players,
)
from .report import (
    AnalysisReport,
    GroupFragmentationRow,
    NetworkStats,
    RoleBreakdown,
    analyze_graph,
    classify_key_players,
    compare_methods,
    export_graph,
    group_fragmentation_summary,
    render_report,
)
from .synth import (
    ScenarioConfig,
    ScenarioTruth,
    generate_animator_scenario,
    generate_random_graph,
)
