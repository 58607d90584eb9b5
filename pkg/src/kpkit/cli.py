"""Command-line entry point.

Subcommands:

- ``analyze``: build a network from logs, run key-player analysis, write a
  report and a reproducibility manifest.
- ``fragment``: print the initial/final/change fragmentation for an
  explicit removal set.
- ``export``: write an annotated DOT or GraphML file.
- ``simulate``: generate a synthetic animator scenario dataset.

Exit codes: 0 success, 2 input parse error (message names file and line),
3 invalid configuration, 4 unknown node, 1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from dataclasses import replace
from pathlib import Path

from . import __version__
from .errors import InvalidConfig, KpkitError, ParseError, UnknownNode
from .graph import Graph, merge_graphs, remove_nodes
from .ingest import (
    RoleTable,
    co_appearance_network,
    interaction_network,
    parse_interaction_log,
    parse_photo_log,
    parse_roles,
)
from .keyplayer import KpConfig, KpMethod, auto_k_by_reach, removal_impact
from .report import (
    analyze_graph,
    export_graph,
    format_frac3,
    parse_report_json,
    render_report,
)
from .synth import ScenarioConfig, generate_animator_scenario, write_scenario

_REPORT_EXT = {"text": "txt", "json": "json", "csv": "csv"}


def _detect_format(path: str) -> str:
    return "jsonl" if path.endswith(".jsonl") else "csv"


def _open_lines(path: str):
    return open(path, encoding="utf-8", newline="")


def _load_photos_graph(path: str) -> Graph:
    with _open_lines(path) as fh:
        records = parse_photo_log(fh, _detect_format(path), source=path)
    return co_appearance_network(records)


def _load_interactions_graph(path: str) -> Graph:
    with _open_lines(path) as fh:
        records = parse_interaction_log(fh, _detect_format(path), source=path)
    return interaction_network(records)


def _sniff_graph_file(path: str) -> str:
    """Classify a graph input as photos or interactions by its header."""
    with _open_lines(path) as fh:
        first = fh.readline()
    if _detect_format(path) == "jsonl":
        try:
            obj = json.loads(first) if first.strip() else {}
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", path, 1) from None
        if "photo_id" in obj:
            return "photos"
        if "source" in obj:
            return "interactions"
        raise ParseError("cannot tell photos from interactions by first line", path, 1)
    header = first.strip()
    if header == "photo_id,participant":
        return "photos"
    if header == "source,target,kind,timestamp":
        return "interactions"
    raise ParseError(f"unrecognized header {header!r}", path, 1)


def _load_graph_inputs(paths: list[str]) -> Graph:
    graphs = []
    for path in paths:
        kind = _sniff_graph_file(path)
        graphs.append(
            _load_photos_graph(path) if kind == "photos" else _load_interactions_graph(path)
        )
    return merge_graphs(*graphs)


def _load_roles(path: str | None) -> RoleTable:
    if path is None:
        return RoleTable({})
    with _open_lines(path) as fh:
        return parse_roles(fh, source=path)


def _write_text(path: Path, content: str) -> None:
    path.write_text(content, encoding="utf-8", newline="")


def _parse_methods(raw: str) -> list[KpMethod]:
    if raw == "both":
        return [KpMethod.NEG, KpMethod.POS]
    if raw in ("neg", "pos"):
        return [KpMethod(raw)]
    raise InvalidConfig(f"unsupported method {raw!r}, expected neg, pos, or both")


def cmd_analyze(args: argparse.Namespace) -> int:
    methods = _parse_methods(args.method)
    if args.format not in _REPORT_EXT:
        raise InvalidConfig(f"unsupported format {args.format!r}, expected text, json, or csv")
    cfg = KpConfig(
        k=args.k,
        rng_seed=args.seed,
        restarts=args.restarts,
        reach_distance_m=args.reach_m,
    )
    cfg.validate()
    if args.auto_k_reach is not None and not 0 < args.auto_k_reach <= 1:
        raise InvalidConfig("--auto-k-reach must be in (0, 1]")
    if not args.photos and not args.interactions:
        raise InvalidConfig("at least one of --photos or --interactions is required")

    graphs = []
    inputs = []
    if args.photos:
        graphs.append(_load_photos_graph(args.photos))
        inputs.append({"kind": "photos", "path": args.photos, "format": _detect_format(args.photos)})
    if args.interactions:
        graphs.append(_load_interactions_graph(args.interactions))
        inputs.append(
            {"kind": "interactions", "path": args.interactions, "format": _detect_format(args.interactions)}
        )
    g = merge_graphs(*graphs)
    roles = _load_roles(args.roles)
    if args.roles:
        inputs.append({"kind": "roles", "path": args.roles, "format": "csv"})
    roles = roles.restrict_to(g.nodes)

    if args.auto_k_reach is not None:
        cfg = replace(cfg, k=auto_k_by_reach(g, cfg, args.auto_k_reach))
    cfg.validate_for(g)

    report = analyze_graph(g, roles, cfg, methods)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / f"report.{_REPORT_EXT[args.format]}"
    _write_text(report_path, render_report(report, args.format))

    manifest = {
        "command": "analyze",
        "tool_version": __version__,
        "seed_used": cfg.rng_seed,
        "inputs": inputs,
        "cfg": {
            "k": cfg.k,
            "restarts": cfg.restarts,
            "rng_seed": cfg.rng_seed,
            "reach_distance_m": cfg.reach_distance_m,
            "max_sweeps": cfg.max_sweeps,
            "methods": [m.value for m in methods],
            "auto_k_reach": args.auto_k_reach,
            "format": args.format,
        },
        "outputs": [report_path.name],
    }
    _write_text(out_dir / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")

    stats = report.network_stats
    print(
        f"analyzed {stats.node_count} nodes / {stats.edge_count} edges"
        f" (k={cfg.k}); wrote {report_path}"
    )
    return 0


def cmd_fragment(args: argparse.Namespace) -> int:
    g = _load_graph_inputs(args.graph_inputs)
    removal = [
        line.strip()
        for line in Path(args.remove).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    remove_nodes(g, removal)  # surfaces UnknownNode before computing
    delta = removal_impact(g, set(removal))
    print(
        f"initial {format_frac3(delta.initial)} final {format_frac3(delta.final)}"
        f" change {format_frac3(delta.change)}"
    )
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    if args.format not in ("dot", "graphml"):
        raise InvalidConfig(f"unsupported export format {args.format!r}, expected dot or graphml")
    g = _load_graph_inputs(args.graph_inputs)
    roles = _load_roles(args.roles).restrict_to(g.nodes)
    highlight: tuple[str, ...] = ()
    if args.highlight:
        report = parse_report_json(Path(args.highlight).read_text(encoding="utf-8"))
        wanted = KpMethod(args.highlight_method)
        matches = [r for r in report.kp_results if r.method is wanted]
        if not matches:
            raise InvalidConfig(
                f"report {args.highlight} has no {wanted.value} result to highlight"
            )
        highlight = matches[0].chosen
    _write_text(Path(args.out), export_graph(g, roles, highlight, args.format))
    print(f"wrote {args.out}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = ScenarioConfig(
        clusters=args.clusters,
        cluster_size=args.cluster_size,
        animators=args.animators,
        intra_cluster_density=args.density,
        rng_seed=args.seed,
    )
    truth = generate_animator_scenario(cfg)
    files = write_scenario(truth, args.out_dir)
    g = truth.dataset.graph
    print(
        f"simulated {g.node_count} nodes / {g.edge_count} edges"
        f" with {len(truth.planted_animators)} planted animators;"
        f" wrote {', '.join(str(f) for f in files)}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpkit",
        description="Key-player analysis for interaction networks",
    )
    parser.add_argument("--version", action="version", version=f"kpkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run key-player analysis on logs")
    analyze.add_argument("--photos", help="photo co-appearance log (.csv or .jsonl)")
    analyze.add_argument("--interactions", help="dyadic interaction log (.csv or .jsonl)")
    analyze.add_argument("--roles", help="roles CSV (node_id,role)")
    analyze.add_argument("--k", type=int, default=5, help="key-player set size (default 5)")
    analyze.add_argument("--method", default="both", help="neg, pos, or both (default both)")
    analyze.add_argument("--restarts", type=int, default=20, help="greedy restarts (default 20)")
    analyze.add_argument("--seed", type=int, default=0, help="optimizer rng seed")
    analyze.add_argument("--reach-m", type=int, default=1, help="reach distance for pos (default 1)")
    analyze.add_argument(
        "--auto-k-reach",
        type=float,
        default=None,
        metavar="FRACTION",
        help="pick the smallest k whose pos reach meets this fraction, then use it for neg too",
    )
    analyze.add_argument("--out-dir", required=True, help="directory for report and manifest")
    analyze.add_argument("--format", default="json", help="report format: text, json, or csv")
    analyze.set_defaults(func=cmd_analyze)

    fragment = sub.add_parser("fragment", help="fragmentation impact of removing listed nodes")
    fragment.add_argument(
        "--graph-inputs", nargs="+", required=True, help="photo/interaction log files"
    )
    fragment.add_argument("--remove", required=True, help="file with one node id per line")
    fragment.set_defaults(func=cmd_fragment)

    export = sub.add_parser("export", help="export an annotated graph file")
    export.add_argument(
        "--graph-inputs", nargs="+", required=True, help="photo/interaction log files"
    )
    export.add_argument("--roles", help="roles CSV (node_id,role)")
    export.add_argument("--format", required=True, help="dot or graphml")
    export.add_argument("--highlight", help="report.json whose chosen set to highlight")
    export.add_argument(
        "--highlight-method", default="neg", help="which result to highlight (neg or pos)"
    )
    export.add_argument("--out", required=True, help="output file")
    export.set_defaults(func=cmd_export)

    simulate = sub.add_parser("simulate", help="generate a synthetic animator scenario")
    simulate.add_argument("--clusters", type=int, required=True)
    simulate.add_argument("--cluster-size", type=int, required=True)
    simulate.add_argument("--animators", type=int, required=True)
    simulate.add_argument("--density", type=float, default=0.8, help="intra-cluster density")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--out-dir", required=True)
    simulate.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UnknownNode as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KpkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:  # internal failure
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
