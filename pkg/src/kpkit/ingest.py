"""Interaction-log and photo-log ingestion.

File formats (UTF-8 throughout, CSV quoting per RFC 4180):

- ``photos.csv``: header ``photo_id,participant``, one row per
  (photo, participant). Rows sharing a photo_id are merged into one record.
- ``photos.jsonl``: one object per line with keys ``photo_id`` (string),
  ``participants`` (array of strings), ``timestamp`` (optional string).
- ``interactions.csv``: header ``source,target,kind,timestamp``; the
  timestamp field may be empty. ``interactions.jsonl`` analogous.
- ``roles.csv``: header ``node_id,role`` with role in
  ``{seeded_developer, participant}``.

Identifiers compare by exact byte equality (case-sensitive); no silent
merging of near-matches.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    DuplicateNode,
    EmptyParticipants,
    ParseError,
    SelfInteraction,
    UnknownKind,
    UnknownRole,
)
from .graph import Graph, NodeId, build_graph

INTERACTION_KINDS = ("wave", "like", "comment", "tag", "rsvp_other")

ROLE_SEEDED_DEVELOPER = "seeded_developer"
ROLE_PARTICIPANT = "participant"
ROLES = (ROLE_SEEDED_DEVELOPER, ROLE_PARTICIPANT)

_PHOTO_HEADER = ["photo_id", "participant"]
_INTERACTION_HEADER = ["source", "target", "kind", "timestamp"]
_ROLES_HEADER = ["node_id", "role"]


@dataclass(frozen=True)
class PhotoRecord:
    """One photo and the deduplicated, order-preserving participant list."""

    photo_id: str
    participants: tuple[NodeId, ...]
    timestamp: str | None = None


@dataclass(frozen=True)
class InteractionRecord:
    """One directed in-app interaction (source != target)."""

    source: NodeId
    target: NodeId
    kind: str
    timestamp: str | None = None


@dataclass(frozen=True)
class RoleTable:
    """Node-to-role map; nodes absent from the map are participants."""

    roles: Mapping[NodeId, str] = field(default_factory=dict)

    def role_of(self, node: NodeId) -> str:
        return self.roles.get(node, ROLE_PARTICIPANT)

    def is_seeded_developer(self, node: NodeId) -> bool:
        return self.role_of(node) == ROLE_SEEDED_DEVELOPER

    def restrict_to(self, nodes: Iterable[NodeId]) -> "RoleTable":
        allowed = set(nodes)
        return RoleTable({v: r for v, r in self.roles.items() if v in allowed})


@dataclass(frozen=True)
class Dataset:
    """A built network plus its role labels and a provenance note."""

    graph: Graph
    roles: RoleTable
    provenance: str


def make_dataset(graph: Graph, roles: RoleTable, provenance: str) -> Dataset:
    """Assemble a dataset, dropping role entries for nodes not in the graph.

    Participants that appear only in a roles file never interacted, so they
    are not part of the network.
    """
    return Dataset(graph=graph, roles=roles.restrict_to(graph.nodes), provenance=provenance)


def _check_header(row: list[str] | None, expected: list[str], source: str) -> None:
    if row is None:
        raise ParseError(f"missing header, expected {','.join(expected)}", source, 1)
    if [c.strip() for c in row] != expected:
        raise ParseError(
            f"bad header {','.join(row)!r}, expected {','.join(expected)}", source, 1
        )


def parse_photo_log(
    stream: Iterable[str], fmt: str = "csv", source: str = "<stream>"
) -> list[PhotoRecord]:
    """Parse a photo co-appearance log into one record per photo."""
    if fmt == "csv":
        return _parse_photos_csv(stream, source)
    if fmt == "jsonl":
        return _parse_photos_jsonl(stream, source)
    raise ParseError(f"unsupported photo log format {fmt!r}", source)


def _parse_photos_csv(stream: Iterable[str], source: str) -> list[PhotoRecord]:
    reader = csv.reader(stream)
    _check_header(next(reader, None), _PHOTO_HEADER, source)
    grouped: dict[str, list[str]] = {}
    for row in reader:
        if not row:
            continue
        line = reader.line_num
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", source, line)
        photo_id, participant = row
        if not photo_id:
            raise ParseError("empty photo_id", source, line)
        if not participant:
            raise EmptyParticipants(f"photo {photo_id!r} has an empty participant", source, line)
        grouped.setdefault(photo_id, [])
        if participant not in grouped[photo_id]:
            grouped[photo_id].append(participant)
    return [PhotoRecord(pid, tuple(people)) for pid, people in grouped.items()]


def _parse_photos_jsonl(stream: Iterable[str], source: str) -> list[PhotoRecord]:
    grouped: dict[str, list[str]] = {}
    timestamps: dict[str, str | None] = {}
    for line_num, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", source, line_num) from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", source, line_num)
        photo_id = obj.get("photo_id")
        participants = obj.get("participants")
        if not isinstance(photo_id, str) or not photo_id:
            raise ParseError("photo_id must be a non-empty string", source, line_num)
        if not isinstance(participants, list) or not all(
            isinstance(p, str) and p for p in participants
        ):
            raise ParseError("participants must be a list of non-empty strings", source, line_num)
        if not participants:
            raise EmptyParticipants(f"photo {photo_id!r} has no participants", source, line_num)
        timestamp = obj.get("timestamp")
        if timestamp is not None and not isinstance(timestamp, str):
            raise ParseError("timestamp must be a string when present", source, line_num)
        bucket = grouped.setdefault(photo_id, [])
        for p in participants:
            if p not in bucket:
                bucket.append(p)
        if photo_id not in timestamps or timestamps[photo_id] is None:
            timestamps[photo_id] = timestamp
    return [
        PhotoRecord(pid, tuple(people), timestamps.get(pid))
        for pid, people in grouped.items()
    ]


def parse_interaction_log(
    stream: Iterable[str], fmt: str = "csv", source: str = "<stream>"
) -> list[InteractionRecord]:
    """Parse a dyadic interaction log, one record per row or line."""
    if fmt == "csv":
        return _parse_interactions_csv(stream, source)
    if fmt == "jsonl":
        return _parse_interactions_jsonl(stream, source)
    raise ParseError(f"unsupported interaction log format {fmt!r}", source)


def _validate_interaction(
    src: str, dst: str, kind: str, source: str, line: int
) -> None:
    if not src or not dst:
        raise ParseError("source and target must be non-empty", source, line)
    if src == dst:
        raise SelfInteraction(f"self-interaction on {src!r}", source, line)
    if kind not in INTERACTION_KINDS:
        raise UnknownKind(
            f"unknown kind {kind!r}, expected one of {', '.join(INTERACTION_KINDS)}",
            source,
            line,
        )


def _parse_interactions_csv(stream: Iterable[str], source: str) -> list[InteractionRecord]:
    reader = csv.reader(stream)
    _check_header(next(reader, None), _INTERACTION_HEADER, source)
    records = []
    for row in reader:
        if not row:
            continue
        line = reader.line_num
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", source, line)
        src, dst, kind, timestamp = row
        _validate_interaction(src, dst, kind, source, line)
        records.append(InteractionRecord(src, dst, kind, timestamp or None))
    return records


def _parse_interactions_jsonl(stream: Iterable[str], source: str) -> list[InteractionRecord]:
    records = []
    for line_num, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", source, line_num) from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", source, line_num)
        src = obj.get("source")
        dst = obj.get("target")
        kind = obj.get("kind")
        timestamp = obj.get("timestamp")
        if not isinstance(src, str) or not isinstance(dst, str) or not isinstance(kind, str):
            raise ParseError("source, target, and kind must be strings", source, line_num)
        if timestamp is not None and not isinstance(timestamp, str):
            raise ParseError("timestamp must be a string when present", source, line_num)
        _validate_interaction(src, dst, kind, source, line_num)
        records.append(InteractionRecord(src, dst, kind, timestamp))
    return records


def parse_roles(stream: Iterable[str], source: str = "<stream>") -> RoleTable:
    """Parse a roles CSV into a RoleTable."""
    reader = csv.reader(stream)
    _check_header(next(reader, None), _ROLES_HEADER, source)
    roles: dict[str, str] = {}
    for row in reader:
        if not row:
            continue
        line = reader.line_num
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", source, line)
        node, role = row
        if not node:
            raise ParseError("empty node_id", source, line)
        if role not in ROLES:
            raise UnknownRole(
                f"unknown role {role!r} for {node!r}, expected one of {', '.join(ROLES)}",
                source,
                line,
            )
        if node in roles and roles[node] != role:
            raise DuplicateNode(f"conflicting roles for {node!r}", source, line)
        roles[node] = role
    return RoleTable(roles)


def co_appearance_network(photos: Iterable[PhotoRecord]) -> Graph:
    """Clique-per-photo network: everyone in a photo is linked pairwise.

    A photo with three participants yields a fully connected triad; repeated
    co-appearances collapse to a single edge; solo photos yield isolates.
    """
    nodes: set[NodeId] = set()
    edges: list[tuple[NodeId, NodeId]] = []
    for photo in photos:
        people = photo.participants
        nodes.update(people)
        for i in range(len(people)):
            for j in range(i + 1, len(people)):
                edges.append((people[i], people[j]))
    return build_graph(nodes, edges)


def interaction_network(records: Iterable[InteractionRecord]) -> Graph:
    """Binary undirected network over interaction records.

    Direction, kind, and multiplicity are all collapsed: any number of
    interactions between a pair, in either direction, gives one edge.
    """
    nodes: set[NodeId] = set()
    edges: list[tuple[NodeId, NodeId]] = []
    for rec in records:
        nodes.add(rec.source)
        nodes.add(rec.target)
        edges.append((rec.source, rec.target))
    return build_graph(nodes, edges)


def photo_log_to_csv(records: Iterable[PhotoRecord]) -> str:
    """Canonical CSV serialization; re-parsing reproduces the records."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_PHOTO_HEADER)
    for rec in records:
        for participant in rec.participants:
            writer.writerow([rec.photo_id, participant])
    return buf.getvalue()


def interaction_log_to_csv(records: Iterable[InteractionRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_INTERACTION_HEADER)
    for rec in records:
        writer.writerow([rec.source, rec.target, rec.kind, rec.timestamp or ""])
    return buf.getvalue()


def roles_to_csv(table: RoleTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_ROLES_HEADER)
    for node in sorted(table.roles):
        writer.writerow([node, table.roles[node]])
    return buf.getvalue()
