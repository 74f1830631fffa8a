"""Profile data model, document parsing, and canonical serialization.

A profile document is a single JSON object (one per line in JSONL files, or
one per ``.json`` file) with top-level keys ``user_id``, ``display_name``,
``consent``, ``text_items``, ``image_items``, ``graph``. Timestamps are
RFC 3339 strings and are normalized to UTC on parse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

from .errors import MalformedDocument, MissingEgoNode, SchemaViolation

MAX_TEXT_LENGTH = 10_000


class Source(str, Enum):
    LINKEDIN = "linkedin"
    INSTAGRAM = "instagram"
    OTHER = "other"


class TextKind(str, Enum):
    BIO = "bio"
    POST = "post"
    COMMENT = "comment"
    JOB_ENTRY = "job_entry"


class Sector(str, Enum):
    ENGINEERING = "engineering"
    FINANCE = "finance"
    GAMBLING_INDUSTRY = "gambling_industry"
    ARMS = "arms"
    ADULT = "adult"
    RETAIL = "retail"
    EDUCATION = "education"
    UNKNOWN = "unknown"


class ConsentScope(str, Enum):
    TEXT = "text"
    IMAGES = "images"
    GRAPH = "graph"


# Canonical scope order used by emit_profile.
_SCOPE_ORDER = (ConsentScope.TEXT, ConsentScope.IMAGES, ConsentScope.GRAPH)


@dataclass(frozen=True)
class ConsentRecord:
    granted: bool
    scopes: frozenset[ConsentScope]
    timestamp: datetime

    def allows(self, scope: ConsentScope) -> bool:
        return self.granted and scope in self.scopes


@dataclass(frozen=True)
class TextItem:
    item_id: str
    source: Source
    kind: TextKind
    text: str
    timestamp: datetime


@dataclass(frozen=True)
class ImageLabel:
    label: str
    confidence: float


@dataclass(frozen=True)
class ImageItem:
    item_id: str
    source: Source
    labels: tuple[ImageLabel, ...]
    timestamp: datetime


@dataclass(frozen=True)
class NodeAttrs:
    verified: bool
    sector: Sector


@dataclass(frozen=True)
class SocialGraph:
    """Undirected weighted graph; edges stored with u < v, no self-loops."""

    nodes: dict[str, NodeAttrs]
    edges: tuple[tuple[str, str, float], ...]
    _adjacency: dict[str, list[tuple[str, float]]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        adj: dict[str, list[tuple[str, float]]] = {n: [] for n in self.nodes}
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        object.__setattr__(self, "_adjacency", adj)

    def neighbors(self, node_id: str) -> list[tuple[str, float]]:
        return self._adjacency[node_id]

    def degree(self, node_id: str) -> int:
        return len(self._adjacency[node_id])

    def has_edge(self, u: str, v: str) -> bool:
        return any(other == v for other, _ in self._adjacency.get(u, []))


@dataclass(frozen=True)
class SocialProfile:
    user_id: str
    display_name: str
    consent: ConsentRecord
    text_items: tuple[TextItem, ...]
    image_items: tuple[ImageItem, ...]
    graph: SocialGraph

    def find_text_item(self, item_id: str) -> TextItem | None:
        return next((t for t in self.text_items if t.item_id == item_id), None)

    def find_image_item(self, item_id: str) -> ImageItem | None:
        return next((i for i in self.image_items if i.item_id == item_id), None)

    def without_items(self, item_ids: set[str]) -> "SocialProfile":
        """Copy of the profile with the given text/image items removed."""
        return SocialProfile(
            user_id=self.user_id,
            display_name=self.display_name,
            consent=self.consent,
            text_items=tuple(t for t in self.text_items if t.item_id not in item_ids),
            image_items=tuple(i for i in self.image_items if i.item_id not in item_ids),
            graph=self.graph,
        )


# --- timestamp handling -----------------------------------------------------

def parse_timestamp(value: object, where: str) -> datetime:
    """Parse an RFC 3339 string to an aware UTC datetime."""
    if not isinstance(value, str):
        raise SchemaViolation(f"{where}: timestamp must be an RFC 3339 string")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise SchemaViolation(f"{where}: invalid timestamp {value!r}") from exc
    if parsed.tzinfo is None:
        raise SchemaViolation(f"{where}: timestamp must carry a UTC offset")
    return parsed.astimezone(timezone.utc)


def format_timestamp(value: datetime) -> str:
    """Render an aware datetime as a canonical RFC 3339 UTC string.

    Sub-second values always carry six fractional digits; variable-width
    fractions would not re-parse under fromisoformat.
    """
    utc = value.astimezone(timezone.utc)
    if utc.microsecond:
        return utc.strftime("%Y-%m-%dT%H:%M:%S.%fZ")
    return utc.strftime("%Y-%m-%dT%H:%M:%SZ")


# --- parsing ----------------------------------------------------------------

def _require(obj: dict, key: str, where: str) -> object:
    if key not in obj:
        raise SchemaViolation(f"{where}: missing field {key!r}")
    return obj[key]


def _require_str(obj: dict, key: str, where: str, allow_empty: bool = True) -> str:
    value = _require(obj, key, where)
    if not isinstance(value, str):
        raise SchemaViolation(f"{where}: field {key!r} must be a string")
    if not allow_empty and not value:
        raise SchemaViolation(f"{where}: field {key!r} must be nonempty")
    return value


def _parse_enum(enum_cls: type, value: object, where: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise SchemaViolation(f"{where}: {value!r} not one of {{{allowed}}}") from None


def _parse_consent(raw: object) -> ConsentRecord:
    if not isinstance(raw, dict):
        raise SchemaViolation("consent: must be an object")
    granted = _require(raw, "granted", "consent")
    if not isinstance(granted, bool):
        raise SchemaViolation("consent: granted must be a boolean")
    scopes_raw = _require(raw, "scopes", "consent")
    if not isinstance(scopes_raw, list):
        raise SchemaViolation("consent: scopes must be a list")
    scopes = frozenset(_parse_enum(ConsentScope, s, "consent.scopes") for s in scopes_raw)
    if not granted and scopes:
        raise SchemaViolation("consent: scopes must be empty when granted is false")
    timestamp = parse_timestamp(_require(raw, "timestamp", "consent"), "consent")
    return ConsentRecord(granted=granted, scopes=scopes, timestamp=timestamp)


def _parse_text_item(raw: object, index: int) -> TextItem:
    where = f"text_items[{index}]"
    if not isinstance(raw, dict):
        raise SchemaViolation(f"{where}: must be an object")
    item_id = _require_str(raw, "item_id", where, allow_empty=False)
    source = _parse_enum(Source, _require(raw, "source", where), where)
    kind = _parse_enum(TextKind, _require(raw, "kind", where), where)
    text = _require_str(raw, "text", where)
    if len(text) > MAX_TEXT_LENGTH:
        raise SchemaViolation(f"{where}: text exceeds {MAX_TEXT_LENGTH} characters")
    if kind is TextKind.JOB_ENTRY and source is not Source.LINKEDIN:
        raise SchemaViolation(f"{where}: job_entry items must come from linkedin")
    timestamp = parse_timestamp(_require(raw, "timestamp", where), where)
    return TextItem(item_id=item_id, source=source, kind=kind, text=text, timestamp=timestamp)


def _parse_image_item(raw: object, index: int) -> ImageItem:
    where = f"image_items[{index}]"
    if not isinstance(raw, dict):
        raise SchemaViolation(f"{where}: must be an object")
    item_id = _require_str(raw, "item_id", where, allow_empty=False)
    source = _parse_enum(Source, _require(raw, "source", where), where)
    labels_raw = _require(raw, "labels", where)
    if not isinstance(labels_raw, list) or not labels_raw:
        raise SchemaViolation(f"{where}: labels must be a nonempty list")
    labels = []
    for j, label_raw in enumerate(labels_raw):
        lwhere = f"{where}.labels[{j}]"
        if not isinstance(label_raw, dict):
            raise SchemaViolation(f"{lwhere}: must be an object")
        label = _require_str(label_raw, "label", lwhere, allow_empty=False)
        confidence = _require(label_raw, "confidence", lwhere)
        if not isinstance(confidence, (int, float)) or isinstance(confidence, bool):
            raise SchemaViolation(f"{lwhere}: confidence must be a number")
        if not 0.0 <= confidence <= 1.0:
            raise SchemaViolation(f"{lwhere}: confidence {confidence} outside [0, 1]")
        labels.append(ImageLabel(label=label, confidence=float(confidence)))
    timestamp = parse_timestamp(_require(raw, "timestamp", where), where)
    return ImageItem(item_id=item_id, source=source, labels=tuple(labels), timestamp=timestamp)


def _parse_graph(raw: object, user_id: str) -> SocialGraph:
    if not isinstance(raw, dict):
        raise SchemaViolation("graph: must be an object")
    nodes_raw = _require(raw, "nodes", "graph")
    if not isinstance(nodes_raw, dict):
        raise SchemaViolation("graph.nodes: must be a mapping of node id to attributes")
    nodes: dict[str, NodeAttrs] = {}
    for node_id, attrs_raw in nodes_raw.items():
        where = f"graph.nodes[{node_id}]"
        if not isinstance(attrs_raw, dict):
            raise SchemaViolation(f"{where}: must be an object")
        verified = _require(attrs_raw, "verified", where)
        if not isinstance(verified, bool):
            raise SchemaViolation(f"{where}: verified must be a boolean")
        sector = _parse_enum(Sector, _require(attrs_raw, "sector", where), where)
        nodes[node_id] = NodeAttrs(verified=verified, sector=sector)
    if user_id not in nodes:
        raise MissingEgoNode(f"graph has no ego node for user_id {user_id!r}")

    edges_raw = _require(raw, "edges", "graph")
    if not isinstance(edges_raw, list):
        raise SchemaViolation("graph.edges: must be a list of [u, v, weight] triples")
    edges: list[tuple[str, str, float]] = []
    seen: set[tuple[str, str]] = set()
    for i, edge_raw in enumerate(edges_raw):
        where = f"graph.edges[{i}]"
        if not isinstance(edge_raw, list) or len(edge_raw) != 3:
            raise SchemaViolation(f"{where}: must be a [u, v, weight] triple")
        u, v, weight = edge_raw
        if not isinstance(u, str) or not isinstance(v, str):
            raise SchemaViolation(f"{where}: endpoints must be node ids")
        if u == v:
            raise SchemaViolation(f"{where}: self-loops are not allowed")
        if u not in nodes or v not in nodes:
            raise SchemaViolation(f"{where}: endpoint missing from graph.nodes")
        if not isinstance(weight, (int, float)) or isinstance(weight, bool):
            raise SchemaViolation(f"{where}: weight must be a number")
        if weight < 0:
            raise SchemaViolation(f"{where}: weight must be nonnegative")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise SchemaViolation(f"{where}: duplicate edge {key}")
        seen.add(key)
        edges.append((key[0], key[1], float(weight)))
    return SocialGraph(nodes=nodes, edges=tuple(edges))


def parse_profile(document: str | bytes) -> SocialProfile:
    """Parse and fully validate one profile document."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument("document is not valid UTF-8") from exc
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SchemaViolation("profile document must be a JSON object")

    user_id = _require_str(raw, "user_id", "profile", allow_empty=False)
    display_name = _require_str(raw, "display_name", "profile")
    consent = _parse_consent(_require(raw, "consent", "profile"))

    text_raw = _require(raw, "text_items", "profile")
    if not isinstance(text_raw, list):
        raise SchemaViolation("text_items: must be a list")
    text_items = tuple(_parse_text_item(item, i) for i, item in enumerate(text_raw))

    image_raw = _require(raw, "image_items", "profile")
    if not isinstance(image_raw, list):
        raise SchemaViolation("image_items: must be a list")
    image_items = tuple(_parse_image_item(item, i) for i, item in enumerate(image_raw))

    item_ids = [t.item_id for t in text_items] + [i.item_id for i in image_items]
    duplicates = {i for i in item_ids if item_ids.count(i) > 1}
    if duplicates:
        raise SchemaViolation(f"duplicate item ids: {sorted(duplicates)}")

    graph = _parse_graph(_require(raw, "graph", "profile"), user_id)
    return SocialProfile(
        user_id=user_id,
        display_name=display_name,
        consent=consent,
        text_items=text_items,
        image_items=image_items,
        graph=graph,
    )


# --- canonical serialization -------------------------------------------------

def profile_to_dict(p: SocialProfile) -> dict:
    """Plain-dict view with keys in the canonical documented order."""
    return {
        "user_id": p.user_id,
        "display_name": p.display_name,
        "consent": {
            "granted": p.consent.granted,
            "scopes": [s.value for s in _SCOPE_ORDER if s in p.consent.scopes],
            "timestamp": format_timestamp(p.consent.timestamp),
        },
        "text_items": [
            {
                "item_id": t.item_id,
                "source": t.source.value,
                "kind": t.kind.value,
                "text": t.text,
                "timestamp": format_timestamp(t.timestamp),
            }
            for t in p.text_items
        ],
        "image_items": [
            {
                "item_id": i.item_id,
                "source": i.source.value,
                "labels": [
                    {"label": l.label, "confidence": l.confidence} for l in i.labels
                ],
                "timestamp": format_timestamp(i.timestamp),
            }
            for i in p.image_items
        ],
        "graph": {
            "nodes": {
                node_id: {"verified": attrs.verified, "sector": attrs.sector.value}
                for node_id, attrs in sorted(p.graph.nodes.items())
            },
            "edges": [[u, v, w] for u, v, w in p.graph.edges],
        },
    }


def emit_profile(p: SocialProfile) -> str:
    """Canonical single-line serialization; parse(emit(p)) == p."""
    return json.dumps(profile_to_dict(p), ensure_ascii=False, separators=(", ", ": "))
