"""Graph trust propagation and ego-network metrics.

Node embeddings evolve by synchronous message passing: each layer maps every
node to sigma(W @ sum_{u in N(v)} weight(u, v) * h_u + b), computed for all
nodes from the previous layer only. No self-loop is added, so an isolated
node's update collapses to sigma(b). Layer-0 embeddings are structural seeds:

    h_v = [verified(v), log(1 + deg(v)) / log(1 + max_deg), sector_risk(v), 0, ...]

with the 0/0 -> 0 convention when the graph has no edges. The per-node
readout concatenates the ego's final embedding, the mean of its neighbors'
final embeddings, and three ego-network metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionTooSmall, NonFiniteResult, UnknownNode
from .evidence import EvidenceRef, Modality
from .profiles import ConsentScope, Sector, SocialGraph, SocialProfile

MAX_LAYERS = 16

RISKY_SECTORS = frozenset({Sector.GAMBLING_INDUSTRY, Sector.ARMS, Sector.ADULT})

GRAPH_METRIC_NAMES = (
    "degree_centrality",
    "clustering_coefficient",
    "verified_neighbor_fraction",
)

_ACTIVATIONS = {
    "tanh": np.tanh,
    "relu": lambda x: np.maximum(x, 0.0),
    "identity": lambda x: x,
}


def _default_weight(d: int = 8) -> np.ndarray:
    return 0.5 * np.eye(d)


@dataclass(frozen=True)
class GnnParams:
    """Propagation constants: configured, not trained."""

    d: int = 8
    k: int = 2
    w: np.ndarray = field(default_factory=_default_weight)
    b: np.ndarray = field(default_factory=lambda: np.zeros(8))
    activation: str = "tanh"
    layer_cap: int = MAX_LAYERS

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("embedding dimension must be positive")
        if self.k < 0 or self.k > self.layer_cap:
            raise ValueError(f"layer count must be in [0, {self.layer_cap}]")
        if self.activation not in _ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        w = np.asarray(self.w, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if w.shape != (self.d, self.d):
            raise ValueError(f"W must be {self.d}x{self.d}, got {w.shape}")
        if b.shape != (self.d,):
            raise ValueError(f"b must have length {self.d}, got {b.shape}")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", b)

    def activate(self, x: np.ndarray) -> np.ndarray:
        return _ACTIVATIONS[self.activation](x)


NodeEmbedding = dict[str, np.ndarray]


def sector_risk(sector: Sector) -> float:
    return 1.0 if sector in RISKY_SECTORS else 0.0


def init_embeddings(g: SocialGraph, d: int) -> NodeEmbedding:
    """Layer-0 structural seed embeddings (needs d >= 3 slots)."""
    if d < 3:
        raise DimensionTooSmall(f"embedding dimension {d} < 3")
    max_deg = max((g.degree(n) for n in g.nodes), default=0)
    log_max = math.log1p(max_deg)
    embeddings: NodeEmbedding = {}
    for node_id, attrs in g.nodes.items():
        h = np.zeros(d)
        h[0] = 1.0 if attrs.verified else 0.0
        h[1] = math.log1p(g.degree(node_id)) / log_max if log_max > 0 else 0.0
        h[2] = sector_risk(attrs.sector)
        embeddings[node_id] = h
    return embeddings


def gnn_step(h: NodeEmbedding, g: SocialGraph, params: GnnParams) -> NodeEmbedding:
    """One synchronous propagation layer over the weighted neighbor sum."""
    out: NodeEmbedding = {}
    with np.errstate(over="ignore", invalid="ignore"):
        for node_id in g.nodes:
            agg = np.zeros(params.d)
            for neighbor, weight in g.neighbors(node_id):
                agg += weight * h[neighbor]
            out[node_id] = params.activate(params.w @ agg + params.b)
    for node_id, vec in out.items():
        if not np.all(np.isfinite(vec)):
            raise NonFiniteResult(f"non-finite embedding at node {node_id!r}")
    return out


def run_propagation(g: SocialGraph, params: GnnParams) -> NodeEmbedding:
    """Initialize and run all configured layers."""
    h = init_embeddings(g, params.d)
    for _ in range(params.k):
        h = gnn_step(h, g, params)
    return h


def graph_metrics(g: SocialGraph, ego: str) -> tuple[float, float, float]:
    """(degree centrality, clustering coefficient, verified neighbor fraction).

    Degenerate conventions: centrality is 0 for a single-node graph,
    clustering is 0 below degree 2, and the verified fraction is 0 for an
    isolated ego.
    """
    if ego not in g.nodes:
        raise UnknownNode(f"node {ego!r} not in graph")
    n = len(g.nodes)
    neighbors = [u for u, _w in g.neighbors(ego)]
    deg = len(neighbors)

    centrality = deg / (n - 1) if n > 1 else 0.0

    triangles = 0
    for i in range(deg):
        for j in range(i + 1, deg):
            if g.has_edge(neighbors[i], neighbors[j]):
                triangles += 1
    clustering = 2.0 * triangles / (deg * (deg - 1)) if deg >= 2 else 0.0

    verified = sum(1 for u in neighbors if g.nodes[u].verified)
    verified_fraction = verified / deg if deg > 0 else 0.0
    return centrality, clustering, verified_fraction


@dataclass(frozen=True)
class GraphFeatureVector:
    ego_embedding: tuple[float, ...]
    neighbor_mean: tuple[float, ...]
    degree_centrality: float
    clustering_coefficient: float
    verified_neighbor_fraction: float

    def values(self) -> tuple[float, ...]:
        return self.ego_embedding + self.neighbor_mean + (
            self.degree_centrality,
            self.clustering_coefficient,
            self.verified_neighbor_fraction,
        )

    @property
    def dimension(self) -> int:
        return len(self.ego_embedding) * 2 + 3

    @classmethod
    def zero(cls, d: int) -> "GraphFeatureVector":
        return cls((0.0,) * d, (0.0,) * d, 0.0, 0.0, 0.0)


def graph_feature_names(d: int) -> tuple[str, ...]:
    """Component names in vector order, used for query building and configs."""
    return (
        tuple(f"ego_embedding_{i}" for i in range(d))
        + tuple(f"neighbor_mean_{i}" for i in range(d))
        + GRAPH_METRIC_NAMES
    )


def extract_graph_features(
    p: SocialProfile, params: GnnParams
) -> tuple[GraphFeatureVector, list[EvidenceRef]]:
    """Run propagation and assemble the graph modality vector.

    Without graph consent the zero vector is returned with no evidence;
    otherwise each metric contributes one graph-modality evidence ref against
    the ego node.
    """
    if not p.consent.allows(ConsentScope.GRAPH):
        return GraphFeatureVector.zero(params.d), []

    h = run_propagation(p.graph, params)
    ego = p.user_id
    neighbors = [u for u, _w in p.graph.neighbors(ego)]
    if neighbors:
        # fsum per dimension keeps the mean independent of neighbor order, so
        # relabeling node ids cannot perturb the readout.
        neighbor_mean = np.array(
            [math.fsum(h[u][i] for u in neighbors) / len(neighbors) for i in range(params.d)]
        )
    else:
        neighbor_mean = np.zeros(params.d)

    centrality, clustering, verified_fraction = graph_metrics(p.graph, ego)
    vector = GraphFeatureVector(
        ego_embedding=tuple(float(x) for x in h[ego]),
        neighbor_mean=tuple(float(x) for x in neighbor_mean),
        degree_centrality=centrality,
        clustering_coefficient=clustering,
        verified_neighbor_fraction=verified_fraction,
    )
    evidence = [EvidenceRef(ego, Modality.GRAPH, name) for name in GRAPH_METRIC_NAMES]
    return vector, evidence
