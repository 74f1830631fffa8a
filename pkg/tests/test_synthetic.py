from __future__ import annotations

from importlib import resources

import pytest

from socialcredit.image_features import default_taxonomy
from socialcredit.profiles import TextKind, emit_profile
from socialcredit.synthetic import Archetype, synthesize_profile

HARAM_LABELS = {"alcohol", "casino", "drugs"}


@pytest.mark.parametrize("archetype", list(Archetype))
@pytest.mark.parametrize("seed", [0, 7, 42, 2**40])
def test_determinism(archetype, seed) -> None:
    first = synthesize_profile(archetype, seed)
    second = synthesize_profile(archetype, seed)
    assert first == second
    assert emit_profile(first) == emit_profile(second)


def _labels(profile) -> list[str]:
    return [label.label for item in profile.image_items for label in item.labels]


@pytest.mark.parametrize("seed", [0, 7, 42, 99])
def test_professional_prudent_contract(seed) -> None:
    p = synthesize_profile(Archetype.PROFESSIONAL_PRUDENT, seed)
    jobs = [t for t in p.text_items if t.kind is TextKind.JOB_ENTRY]
    assert len(jobs) >= 2
    assert not HARAM_LABELS & set(_labels(p))
    neighbors = [u for u, _w in p.graph.neighbors(p.user_id)]
    assert len(neighbors) >= 5
    verified = sum(1 for u in neighbors if p.graph.nodes[u].verified)
    assert verified > len(neighbors) / 2


@pytest.mark.parametrize("seed", [0, 7, 42, 99])
def test_sparse_risky_contract(seed) -> None:
    p = synthesize_profile(Archetype.SPARSE_RISKY, seed)
    jobs = [t for t in p.text_items if t.kind is TextKind.JOB_ENTRY]
    assert len(jobs) <= 1
    strong_alcohol = [
        label
        for item in p.image_items
        for label in item.labels
        if label.label == "alcohol" and label.confidence >= 0.8
    ]
    assert strong_alcohol
    assert len(p.graph.neighbors(p.user_id)) <= 2


@pytest.mark.parametrize("seed", [0, 7, 42, 99])
def test_moderate_alert_contract(seed) -> None:
    p = synthesize_profile(Archetype.MODERATE_ALERT, seed)
    jobs = [t for t in p.text_items if t.kind is TextKind.JOB_ENTRY]
    assert len(jobs) >= 2
    assert _labels(p).count("casino") == 1
    sectors = {p.graph.nodes[u].sector.value for u, _w in p.graph.neighbors(p.user_id)}
    assert "finance" in sectors


def test_all_labels_exist_in_default_taxonomy() -> None:
    taxonomy = default_taxonomy()
    for archetype in Archetype:
        for label in _labels(synthesize_profile(archetype, 42)):
            assert label in taxonomy.labels


@pytest.mark.parametrize(
    "name, archetype",
    [
        ("user_a", Archetype.PROFESSIONAL_PRUDENT),
        ("user_b", Archetype.SPARSE_RISKY),
        ("user_c", Archetype.MODERATE_ALERT),
    ],
)
def test_shipped_fixtures_frozen_at_seed_42(name, archetype) -> None:
    shipped = (
        resources.files("socialcredit.data").joinpath(f"fixtures/{name}.json").read_text("utf-8")
    )
    assert shipped == emit_profile(synthesize_profile(archetype, 42)) + "\n"
