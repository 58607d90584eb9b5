"""Role classification, fragmentation summaries, and report rendering.

Key players are split into seeded developers (labeled in the role table)
and early adopters (every other identified key player). Fragmentation
impact is reported as initial/final/change triples per removal group, the
same three-row shape as the published festival analyses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence
from xml.sax.saxutils import escape, quoteattr

from .errors import InvalidConfig, UnknownNode
from .graph import (
    Graph,
    NodeId,
    connected_components,
    degree_ranking,
    fragmentation,
    graph_density,
)
from .ingest import RoleTable
from .keyplayer import (
    KeyPlayerResult,
    KpConfig,
    KpMethod,
    removal_impact,
    select_key_players,
)

METHOD_LABELS = {KpMethod.NEG: "KPP-NEG", KpMethod.POS: "KPP-POS"}
DEGREE_METHOD_LABEL = "degree_top_k"

REPORT_SCHEMA = "kpkit.report/1"


@dataclass(frozen=True)
class RoleBreakdown:
    """How many of a method's chosen key players fall in each role."""

    method: str
    seeded_developers: int
    early_adopters: int


@dataclass(frozen=True)
class GroupFragmentationRow:
    group_label: str
    group_size: int
    initial: float
    final: float
    change: float


@dataclass(frozen=True)
class NetworkStats:
    node_count: int
    edge_count: int
    component_count: int
    largest_component_size: int
    initial_fragmentation: float
    density: float


@dataclass(frozen=True)
class AnalysisReport:
    breakdowns: tuple[RoleBreakdown, ...]
    fragmentation_rows: tuple[GroupFragmentationRow, ...]
    kp_results: tuple[KeyPlayerResult, ...]
    network_stats: NetworkStats


def format_frac3(x: float) -> str:
    """Render a fraction to 3 decimals, half-up, table style."""
    return str(Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def fragmentation_row_is_consistent(row: GroupFragmentationRow, tol: float = 1e-9) -> bool:
    """Check change = final - initial, before and after 3-decimal rounding."""
    delta = row.final - row.initial
    return abs(delta - row.change) <= tol and format_frac3(delta) == format_frac3(row.change)


def _breakdown(label: str, chosen: Iterable[NodeId], roles: RoleTable) -> RoleBreakdown:
    members = tuple(chosen)
    seeded = sum(1 for v in members if roles.is_seeded_developer(v))
    return RoleBreakdown(
        method=label, seeded_developers=seeded, early_adopters=len(members) - seeded
    )


def classify_key_players(result: KeyPlayerResult, roles: RoleTable) -> RoleBreakdown:
    """Split a chosen set into seeded developers vs early adopters.

    Early adopters are the residual category: any chosen node not labeled
    as a seeded developer.
    """
    return _breakdown(METHOD_LABELS[result.method], result.chosen, roles)


def top_k_by_degree(g: Graph, k: int) -> tuple[NodeId, ...]:
    """The k highest-degree nodes (ties by ascending node id)."""
    if not 1 <= k <= g.node_count:
        raise InvalidConfig(f"k must be in [1, {g.node_count}]")
    return tuple(degree_ranking(g)[:k])


def group_fragmentation_summary(
    g: Graph, roles: RoleTable, kp: KeyPlayerResult
) -> list[GroupFragmentationRow]:
    """Three-row removal-impact table for one key-player result.

    Rows: seeded developers among the chosen, early adopters among the
    chosen, and the full chosen set, each removed from the same initial
    graph.
    """
    chosen = set(kp.chosen)
    developers = sorted(v for v in chosen if roles.is_seeded_developer(v))
    adopters = sorted(chosen.difference(developers))
    rows = []
    for label, group in (
        ("Seeded Developers", developers),
        ("Early Adopters", adopters),
        ("All Key Players", sorted(chosen)),
    ):
        delta = removal_impact(g, group)
        rows.append(
            GroupFragmentationRow(
                group_label=label,
                group_size=len(group),
                initial=delta.initial,
                final=delta.final,
                change=delta.change,
            )
        )
    return rows


def compare_methods(g: Graph, roles: RoleTable, cfg: KpConfig) -> list[RoleBreakdown]:
    """Side-by-side role breakdowns for NEG, POS, and the degree baseline."""
    neg = select_key_players(g, KpMethod.NEG, cfg)
    pos = select_key_players(g, KpMethod.POS, cfg)
    return [
        classify_key_players(neg, roles),
        classify_key_players(pos, roles),
        _breakdown(DEGREE_METHOD_LABEL, top_k_by_degree(g, cfg.k), roles),
    ]


def network_stats(g: Graph) -> NetworkStats:
    parts = connected_components(g)
    return NetworkStats(
        node_count=g.node_count,
        edge_count=g.edge_count,
        component_count=len(parts.sizes),
        largest_component_size=max(parts.sizes),
        initial_fragmentation=fragmentation(g),
        density=graph_density(g),
    )


def analyze_graph(
    g: Graph,
    roles: RoleTable,
    cfg: KpConfig,
    methods: Sequence[KpMethod] = (KpMethod.NEG, KpMethod.POS),
) -> AnalysisReport:
    """Run the selected methods and assemble the full report.

    The fragmentation table is anchored on the NEG result when one was run
    (removal impact is a NEG notion), otherwise on the first result.
    """
    kp_results = tuple(select_key_players(g, m, cfg) for m in methods)
    breakdowns = [classify_key_players(r, roles) for r in kp_results]
    breakdowns.append(_breakdown(DEGREE_METHOD_LABEL, top_k_by_degree(g, cfg.k), roles))
    anchor = next((r for r in kp_results if r.method is KpMethod.NEG), kp_results[0])
    rows = group_fragmentation_summary(g, roles, anchor)
    return AnalysisReport(
        breakdowns=tuple(breakdowns),
        fragmentation_rows=tuple(rows),
        kp_results=kp_results,
        network_stats=network_stats(g),
    )


# --- rendering ---------------------------------------------------------


def render_report(report: AnalysisReport, fmt: str) -> str:
    if fmt == "text":
        return _render_text(report)
    if fmt == "json":
        return _render_json(report)
    if fmt == "csv":
        return _render_csv(report)
    raise InvalidConfig(f"unsupported report format {fmt!r}, expected text, json, or csv")


def _render_text(report: AnalysisReport) -> str:
    s = report.network_stats
    lines = [
        "Network",
        f"  nodes {s.node_count}  edges {s.edge_count}  components {s.component_count}"
        f"  largest {s.largest_component_size}",
        f"  initial fragmentation {format_frac3(s.initial_fragmentation)}"
        f"  density {format_frac3(s.density)}",
        "",
        "Key players",
    ]
    for r in report.kp_results:
        lines.append(
            f"  {METHOD_LABELS[r.method]:8s} fit {format_frac3(r.fit)}  "
            f"chosen {', '.join(r.chosen)}"
        )
    lines += ["", "Role breakdown"]
    lines.append(f"  {'Method':14s}{'Seeded Developers':>19s}{'Early Adopters':>16s}")
    for b in report.breakdowns:
        lines.append(f"  {b.method:14s}{b.seeded_developers:>19d}{b.early_adopters:>16d}")
    lines += ["", "Fragmentation impact"]
    lines.append(f"  {'Group':22s}{'n':>3s}{'Initial':>9s}{'Final':>9s}{'Change':>9s}")
    for row in report.fragmentation_rows:
        lines.append(
            f"  {row.group_label:22s}{row.group_size:>3d}"
            f"{format_frac3(row.initial):>9s}{format_frac3(row.final):>9s}"
            f"{format_frac3(row.change):>9s}"
        )
    return "\n".join(lines) + "\n"


def _render_json(report: AnalysisReport) -> str:
    payload = {
        "schema": REPORT_SCHEMA,
        "network_stats": {
            "node_count": report.network_stats.node_count,
            "edge_count": report.network_stats.edge_count,
            "component_count": report.network_stats.component_count,
            "largest_component_size": report.network_stats.largest_component_size,
            "initial_fragmentation": report.network_stats.initial_fragmentation,
            "density": report.network_stats.density,
        },
        "breakdowns": [
            {
                "method": b.method,
                "seeded_developers": b.seeded_developers,
                "early_adopters": b.early_adopters,
            }
            for b in report.breakdowns
        ],
        "fragmentation_rows": [
            {
                "group_label": r.group_label,
                "group_size": r.group_size,
                "initial": r.initial,
                "final": r.final,
                "change": r.change,
            }
            for r in report.fragmentation_rows
        ],
        "kp_results": [
            {
                "method": r.method.value,
                "chosen": list(r.chosen),
                "fit": r.fit,
                "restarts_run": r.restarts_run,
                "sweeps_per_restart": list(r.sweeps_per_restart),
                "seed_used": r.seed_used,
            }
            for r in report.kp_results
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def parse_report_json(text: str) -> AnalysisReport:
    """Inverse of the JSON rendering; round-trips losslessly."""
    payload = json.loads(text)
    stats = payload["network_stats"]
    return AnalysisReport(
        breakdowns=tuple(
            RoleBreakdown(
                method=b["method"],
                seeded_developers=b["seeded_developers"],
                early_adopters=b["early_adopters"],
            )
            for b in payload["breakdowns"]
        ),
        fragmentation_rows=tuple(
            GroupFragmentationRow(
                group_label=r["group_label"],
                group_size=r["group_size"],
                initial=r["initial"],
                final=r["final"],
                change=r["change"],
            )
            for r in payload["fragmentation_rows"]
        ),
        kp_results=tuple(
            KeyPlayerResult(
                method=KpMethod(r["method"]),
                chosen=tuple(r["chosen"]),
                fit=r["fit"],
                restarts_run=r["restarts_run"],
                sweeps_per_restart=tuple(r["sweeps_per_restart"]),
                seed_used=r["seed_used"],
            )
            for r in payload["kp_results"]
        ),
        network_stats=NetworkStats(
            node_count=stats["node_count"],
            edge_count=stats["edge_count"],
            component_count=stats["component_count"],
            largest_component_size=stats["largest_component_size"],
            initial_fragmentation=stats["initial_fragmentation"],
            density=stats["density"],
        ),
    )


def _render_csv(report: AnalysisReport) -> str:
    s = report.network_stats
    sections = []
    sections.append(
        "network_stats\n"
        "node_count,edge_count,component_count,largest_component_size,"
        "initial_fragmentation,density\n"
        f"{s.node_count},{s.edge_count},{s.component_count},"
        f"{s.largest_component_size},{format_frac3(s.initial_fragmentation)},"
        f"{format_frac3(s.density)}\n"
    )
    rows = ["role_breakdowns", "method,seeded_developers,early_adopters"]
    rows += [f"{b.method},{b.seeded_developers},{b.early_adopters}" for b in report.breakdowns]
    sections.append("\n".join(rows) + "\n")
    rows = ["fragmentation_rows", "group_label,group_size,initial,final,change"]
    rows += [
        f"{r.group_label},{r.group_size},{format_frac3(r.initial)},"
        f"{format_frac3(r.final)},{format_frac3(r.change)}"
        for r in report.fragmentation_rows
    ]
    sections.append("\n".join(rows) + "\n")
    rows = ["key_players", "method,fit,chosen"]
    rows += [f"{r.method.value},{format_frac3(r.fit)},{';'.join(r.chosen)}" for r in report.kp_results]
    sections.append("\n".join(rows) + "\n")
    return "\n".join(sections)


# --- graph export ------------------------------------------------------

_MIN_NODE_WIDTH = 0.3
_WIDTH_PER_DEGREE = 0.12

COLOR_SEEDED = "orange"
COLOR_EARLY = "green"
COLOR_OTHER = "blue"


def _node_color(node: NodeId, roles: RoleTable, highlight: set[NodeId]) -> str:
    if node in highlight:
        return COLOR_SEEDED if roles.is_seeded_developer(node) else COLOR_EARLY
    return COLOR_OTHER


def _node_width(degree: int) -> str:
    return f"{_MIN_NODE_WIDTH + _WIDTH_PER_DEGREE * degree:.2f}"


def export_graph(
    g: Graph, roles: RoleTable, highlight: Iterable[NodeId], fmt: str
) -> str:
    """Annotated graph export for external viewers.

    Highlighted seeded developers render orange, highlighted early adopters
    green, everything else blue; node size grows with degree from a fixed
    minimum. Output ordering is stable, so repeated exports are
    byte-identical.
    """
    chosen = set(highlight)
    for v in chosen:
        if not g.has_node(v):
            raise UnknownNode(f"highlight node {v!r} is not in the graph")
    if fmt == "dot":
        return _export_dot(g, roles, chosen)
    if fmt == "graphml":
        return _export_graphml(g, roles, chosen)
    raise InvalidConfig(f"unsupported export format {fmt!r}, expected dot or graphml")


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _export_dot(g: Graph, roles: RoleTable, highlight: set[NodeId]) -> str:
    lines = ["graph interaction_network {", "  node [style=filled];"]
    for v in g.nodes:
        color = _node_color(v, roles, highlight)
        width = _node_width(g.degree(v))
        lines.append(f"  {_dot_quote(v)} [fillcolor={color}, width={width}];")
    for a, b in g.edges:
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_graphml(g: Graph, roles: RoleTable, highlight: set[NodeId]) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="d_role" for="node" attr.name="role" attr.type="string"/>',
        '  <key id="d_color" for="node" attr.name="color" attr.type="string"/>',
        '  <key id="d_degree" for="node" attr.name="degree" attr.type="int"/>',
        '  <key id="d_highlighted" for="node" attr.name="highlighted" attr.type="boolean"/>',
        '  <graph id="G" edgedefault="undirected">',
    ]
    for v in g.nodes:
        lines.append(f"    <node id={quoteattr(v)}>")
        lines.append(f'      <data key="d_role">{escape(roles.role_of(v))}</data>')
        lines.append(
            f'      <data key="d_color">{_node_color(v, roles, highlight)}</data>'
        )
        lines.append(f'      <data key="d_degree">{g.degree(v)}</data>')
        lines.append(
            f'      <data key="d_highlighted">{"true" if v in highlight else "false"}</data>'
        )
        lines.append("    </node>")
    for a, b in g.edges:
        lines.append(f"    <edge source={quoteattr(a)} target={quoteattr(b)}/>")
    lines += ["  </graph>", "</graphml>"]
    return "\n".join(lines) + "\n"
