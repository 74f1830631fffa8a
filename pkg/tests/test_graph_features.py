from __future__ import annotations

import math
import random
from datetime import datetime, timezone

import numpy as np
import pytest

from socialcredit.errors import DimensionTooSmall, NonFiniteResult, UnknownNode
from socialcredit.evidence import Modality
from socialcredit.graph_features import (
    GnnParams,
    GraphFeatureVector,
    extract_graph_features,
    gnn_step,
    graph_metrics,
    init_embeddings,
    run_propagation,
)
from socialcredit.profiles import (
    ConsentRecord,
    ConsentScope,
    NodeAttrs,
    Sector,
    SocialGraph,
    SocialProfile,
)
from socialcredit.synthetic import Archetype, synthesize_profile

from randgen import random_graph

_TS = datetime(2025, 1, 1, tzinfo=timezone.utc)
_ACTIVATIONS = {
    "tanh": np.tanh,
    "relu": lambda x: np.maximum(x, 0.0),
    "identity": lambda x: x,
}


def dense_oracle(
    g: SocialGraph, h0: dict[str, np.ndarray], params: GnnParams, layers: int
) -> dict[str, np.ndarray]:
    """Independent dense computation: H' = act((A_w @ H) @ W.T + 1 b^T)."""
    order = sorted(g.nodes)
    index = {node: i for i, node in enumerate(order)}
    n = len(order)
    adjacency = np.zeros((n, n))
    for u, v, w in g.edges:
        adjacency[index[u], index[v]] = w
        adjacency[index[v], index[u]] = w
    H = np.stack([h0[node] for node in order])
    act = _ACTIVATIONS[params.activation]
    for _ in range(layers):
        H = act((adjacency @ H) @ params.w.T + np.ones((n, 1)) @ params.b.reshape(1, -1))
    return {node: H[index[node]] for node in order}


def simple_graph(nodes: dict[str, tuple[bool, Sector]], edges) -> SocialGraph:
    return SocialGraph(
        nodes={k: NodeAttrs(verified=v, sector=s) for k, (v, s) in nodes.items()},
        edges=tuple(edges),
    )


def test_init_single_node_uses_zero_degree_convention() -> None:
    g = simple_graph({"ego": (True, Sector.ARMS)}, [])
    h = init_embeddings(g, 3)
    assert np.allclose(h["ego"], [1.0, 0.0, 1.0])


def test_init_two_nodes_one_edge() -> None:
    g = simple_graph(
        {"a": (False, Sector.UNKNOWN), "b": (False, Sector.UNKNOWN)}, [("a", "b", 1.0)]
    )
    h = init_embeddings(g, 3)
    # log(2)/log(2) = 1 for both endpoints
    assert np.allclose(h["a"], [0.0, 1.0, 0.0])
    assert np.allclose(h["b"], [0.0, 1.0, 0.0])


def test_init_verified_finance_node() -> None:
    g = simple_graph({"a": (True, Sector.FINANCE)}, [])
    h = init_embeddings(g, 4)
    assert h["a"][0] == 1.0
    assert h["a"][2] == 0.0


def test_init_degree_component_normalized_by_max_degree() -> None:
    g = simple_graph(
        {"hub": (False, Sector.UNKNOWN), "x": (False, Sector.UNKNOWN), "y": (False, Sector.UNKNOWN)},
        [("hub", "x", 1.0), ("hub", "y", 1.0)],
    )
    h = init_embeddings(g, 3)
    assert h["hub"][1] == pytest.approx(1.0)
    assert h["x"][1] == pytest.approx(math.log(2) / math.log(3))


def test_init_dimension_too_small() -> None:
    g = simple_graph({"a": (False, Sector.UNKNOWN)}, [])
    with pytest.raises(DimensionTooSmall):
        init_embeddings(g, 2)


def test_isolated_node_with_zero_bias_goes_to_zero() -> None:
    g = simple_graph({"a": (True, Sector.ARMS)}, [])
    params = GnnParams(d=3, k=1, w=np.random.default_rng(0).normal(size=(3, 3)), b=np.zeros(3))
    h1 = gnn_step(init_embeddings(g, 3), g, params)
    assert np.allclose(h1["a"], 0.0)


def test_empty_neighborhood_yields_activated_bias() -> None:
    g = simple_graph({"a": (False, Sector.UNKNOWN)}, [])
    b = np.array([0.5, -0.5, 2.0])
    params = GnnParams(d=3, k=1, w=np.eye(3), b=b, activation="tanh")
    h1 = gnn_step(init_embeddings(g, 3), g, params)
    assert np.allclose(h1["a"], np.tanh(b))


def test_path_graph_identity_step_swaps_neighbor_sums() -> None:
    g = simple_graph(
        {
            "u": (True, Sector.UNKNOWN),
            "v": (False, Sector.FINANCE),
            "w": (False, Sector.ARMS),
        },
        [("u", "v", 1.0), ("v", "w", 1.0)],
    )
    params = GnnParams(d=3, k=1, w=np.eye(3), b=np.zeros(3), activation="identity")
    h0 = init_embeddings(g, 3)
    h1 = gnn_step(h0, g, params)
    assert np.allclose(h1["u"], h0["v"])
    assert np.allclose(h1["w"], h0["v"])
    assert np.allclose(h1["v"], h0["u"] + h0["w"])
    oracle = dense_oracle(g, h0, params, layers=1)
    for node in g.nodes:
        assert np.allclose(h1[node], oracle[node], atol=1e-12)


def test_edge_weights_scale_neighbor_sum() -> None:
    g = simple_graph(
        {"a": (False, Sector.UNKNOWN), "b": (True, Sector.UNKNOWN)}, [("a", "b", 2.5)]
    )
    params = GnnParams(d=3, k=1, w=np.eye(3), b=np.zeros(3), activation="identity")
    h0 = init_embeddings(g, 3)
    h1 = gnn_step(h0, g, params)
    assert np.allclose(h1["a"], 2.5 * h0["b"])


def test_tanh_keeps_embeddings_bounded() -> None:
    # Mathematically the range is the open interval; in floats tanh saturates
    # to +/-1.0 exactly, so the checkable bound is |v| <= 1.
    rng = random.Random(21)
    np_rng = np.random.default_rng(21)
    for _ in range(20):
        g = random_graph(rng)
        params = GnnParams(
            d=4,
            k=3,
            w=np_rng.normal(scale=3.0, size=(4, 4)),
            b=np_rng.normal(scale=2.0, size=4),
            activation="tanh",
        )
        h = run_propagation(g, params)
        for vec in h.values():
            assert np.all(np.abs(vec) <= 1.0)
            assert np.all(np.isfinite(vec))


def test_non_finite_result_raises() -> None:
    g = simple_graph(
        {"a": (True, Sector.UNKNOWN), "b": (True, Sector.UNKNOWN)}, [("a", "b", 1.0)]
    )
    params = GnnParams(d=3, k=1, w=np.eye(3) * 1e308, b=np.zeros(3), activation="identity")
    h0 = {k: v * 1e9 for k, v in init_embeddings(g, 3).items()}
    with pytest.raises(NonFiniteResult):
        gnn_step(h0, g, params)


def test_oracle_equivalence_randomized() -> None:
    rng = random.Random(77)
    np_rng = np.random.default_rng(77)
    for _ in range(60):
        g = random_graph(rng, max_nodes=6)
        d = rng.choice([3, 4])
        k = rng.choice([0, 1, 2, 3])
        activation = rng.choice(["tanh", "relu", "identity"])
        params = GnnParams(
            d=d,
            k=k,
            w=np_rng.normal(scale=0.8, size=(d, d)),
            b=np_rng.normal(scale=0.5, size=d),
            activation=activation,
        )
        mine = run_propagation(g, params)
        oracle = dense_oracle(g, init_embeddings(g, d), params, layers=k)
        for node in g.nodes:
            assert np.allclose(mine[node], oracle[node], atol=1e-9)


def test_graph_metrics_triangle() -> None:
    g = simple_graph(
        {
            "a": (True, Sector.UNKNOWN),
            "b": (True, Sector.UNKNOWN),
            "c": (False, Sector.UNKNOWN),
        },
        [("a", "b", 1.0), ("a", "c", 1.0), ("b", "c", 1.0)],
    )
    centrality, clustering, verified = graph_metrics(g, "a")
    assert centrality == 1.0
    assert clustering == 1.0
    assert verified == pytest.approx(0.5)


def test_graph_metrics_star_center() -> None:
    nodes = {"hub": (False, Sector.UNKNOWN)}
    edges = []
    for i in range(4):
        nodes[f"leaf{i}"] = (False, Sector.UNKNOWN)
        edges.append(("hub", f"leaf{i}", 1.0))
    g = simple_graph(nodes, edges)
    centrality, clustering, _ = graph_metrics(g, "hub")
    assert centrality == 1.0
    assert clustering == 0.0  # brute force: no closed triangles in a star


def test_graph_metrics_matches_brute_force_triangles() -> None:
    rng = random.Random(31)
    for _ in range(30):
        g = random_graph(rng, max_nodes=6)
        ego = sorted(g.nodes)[0]
        _, clustering, _ = graph_metrics(g, ego)
        neighbors = [u for u, _w in g.neighbors(ego)]
        deg = len(neighbors)
        closed = sum(
            1
            for i in range(deg)
            for j in range(i + 1, deg)
            if g.has_edge(neighbors[i], neighbors[j])
        )
        expected = 2 * closed / (deg * (deg - 1)) if deg >= 2 else 0.0
        assert clustering == pytest.approx(expected)


def test_graph_metrics_isolated_ego() -> None:
    g = simple_graph({"a": (False, Sector.UNKNOWN)}, [])
    assert graph_metrics(g, "a") == (0.0, 0.0, 0.0)


def test_graph_metrics_unknown_node() -> None:
    g = simple_graph({"a": (False, Sector.UNKNOWN)}, [])
    with pytest.raises(UnknownNode):
        graph_metrics(g, "ghost")


def _graph_profile(g: SocialGraph, ego: str, scopes) -> SocialProfile:
    return SocialProfile(
        user_id=ego,
        display_name="Ego",
        consent=ConsentRecord(granted=True, scopes=scopes, timestamp=_TS),
        text_items=(),
        image_items=(),
        graph=g,
    )


def test_k_zero_keeps_seed_embedding() -> None:
    g = simple_graph(
        {"ego": (True, Sector.FINANCE), "n": (False, Sector.UNKNOWN)}, [("ego", "n", 1.0)]
    )
    profile = _graph_profile(
        g, "ego", frozenset({ConsentScope.GRAPH})
    )
    params = GnnParams(d=4, k=0, w=np.eye(4), b=np.zeros(4))
    vector, _ = extract_graph_features(profile, params)
    assert np.allclose(vector.ego_embedding, init_embeddings(g, 4)["ego"])


def test_prudent_archetype_has_verified_majority() -> None:
    profile = synthesize_profile(Archetype.PROFESSIONAL_PRUDENT, 42)
    vector, evidence = extract_graph_features(profile, GnnParams())
    assert vector.verified_neighbor_fraction >= 0.5
    assert [e.detail for e in evidence] == [
        "degree_centrality",
        "clustering_coefficient",
        "verified_neighbor_fraction",
    ]
    assert all(e.modality is Modality.GRAPH and e.item_id == profile.user_id for e in evidence)


def test_consent_gate_returns_zero_vector() -> None:
    g = simple_graph(
        {"ego": (True, Sector.FINANCE), "n": (True, Sector.FINANCE)}, [("ego", "n", 1.0)]
    )
    profile = _graph_profile(g, "ego", frozenset({ConsentScope.TEXT}))
    vector, evidence = extract_graph_features(profile, GnnParams(d=8))
    assert vector == GraphFeatureVector.zero(8)
    assert evidence == []
    assert len(vector.values()) == 2 * 8 + 3


def test_node_relabeling_equivariance() -> None:
    rng = random.Random(41)
    for _ in range(15):
        g = random_graph(rng, max_nodes=6)
        mapping = {node: f"z{idx}" for idx, node in enumerate(sorted(g.nodes))}
        relabeled = SocialGraph(
            nodes={mapping[n]: attrs for n, attrs in g.nodes.items()},
            edges=tuple(
                (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]), w)
                for u, v, w in g.edges
            ),
        )
        params = GnnParams(d=3, k=2, w=0.5 * np.eye(3), b=np.zeros(3))
        base = run_propagation(g, params)
        moved = run_propagation(relabeled, params)
        for node in g.nodes:
            assert np.allclose(base[node], moved[mapping[node]], atol=1e-12)

        ego = sorted(g.nodes)[0]
        p1 = _graph_profile(g, ego, frozenset({ConsentScope.GRAPH}))
        p2 = _graph_profile(relabeled, mapping[ego], frozenset({ConsentScope.GRAPH}))
        v1, _ = extract_graph_features(p1, params)
        v2, _ = extract_graph_features(p2, params)
        assert v1.values() == pytest.approx(v2.values(), abs=1e-12)


def test_layer_cap_enforced() -> None:
    with pytest.raises(ValueError):
        GnnParams(d=3, k=17, w=np.eye(3), b=np.zeros(3))
