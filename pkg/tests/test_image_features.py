from __future__ import annotations

import random
from datetime import datetime, timezone

import pytest

from socialcredit.errors import UnknownLabel
from socialcredit.evidence import Modality
from socialcredit.image_features import (
    ImageFeatureVector,
    ImageTaxonomy,
    LabelCategory,
    default_taxonomy,
    extract_image_features,
)
from socialcredit.profiles import (
    ConsentRecord,
    ConsentScope,
    ImageItem,
    ImageLabel,
    NodeAttrs,
    Sector,
    SocialGraph,
    SocialProfile,
    Source,
)

from randgen import random_profile

_TS = datetime(2025, 1, 1, tzinfo=timezone.utc)
_ALL_SCOPES = frozenset({ConsentScope.TEXT, ConsentScope.IMAGES, ConsentScope.GRAPH})

UNIT_WEIGHT_TAXONOMY = ImageTaxonomy(
    version="test",
    labels={
        "travel": (LabelCategory.LIFESTYLE_WHOLESOME, 1.0),
        "home": (LabelCategory.ASSET, 1.0),
        "alcohol": (LabelCategory.ALCOHOL, 1.0),
        "casino": (LabelCategory.GAMBLING, 1.0),
        "drugs": (LabelCategory.DRUGS, 1.0),
        "nightclub": (LabelCategory.PARTY, 1.0),
        "selfie": (LabelCategory.NEUTRAL, 0.0),
    },
)


def image_profile(*items: list[tuple[str, float]], scopes=_ALL_SCOPES) -> SocialProfile:
    image_items = tuple(
        ImageItem(
            item_id=f"i{n}",
            source=Source.INSTAGRAM,
            labels=tuple(ImageLabel(label, conf) for label, conf in labels),
            timestamp=_TS,
        )
        for n, labels in enumerate(items)
    )
    return SocialProfile(
        user_id="ego",
        display_name="Ego",
        consent=ConsentRecord(granted=True, scopes=scopes, timestamp=_TS),
        text_items=(),
        image_items=image_items,
        graph=SocialGraph(
            nodes={"ego": NodeAttrs(verified=False, sector=Sector.UNKNOWN)}, edges=()
        ),
    )


def test_alcohol_label_weighted_by_confidence() -> None:
    profile = image_profile([("alcohol", 0.9)])
    vector, evidence = extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector.alcohol_risk == pytest.approx(0.9)
    assert [e.detail for e in evidence] == ["alcohol"]
    assert evidence[0].modality is Modality.IMAGE


def test_zero_image_items_zero_vector() -> None:
    vector, evidence = extract_image_features(image_profile(), UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector == ImageFeatureVector.zero()
    assert evidence == []


def test_two_casino_labels_accumulate_and_cap() -> None:
    profile = image_profile([("casino", 0.6)], [("casino", 0.7)])
    vector, evidence = extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector.gambling_risk == pytest.approx(min(1.0, 0.6 + 0.7))
    assert vector.gambling_risk == 1.0
    assert len([e for e in evidence if e.detail == "casino"]) == 2


def test_label_below_threshold_contributes_nothing() -> None:
    profile = image_profile([("alcohol", 0.4)])
    vector, evidence = extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector.alcohol_risk == 0.0
    assert evidence == []


def test_threshold_boundary_counts() -> None:
    profile = image_profile([("alcohol", 0.5)])
    vector, _ = extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector.alcohol_risk == pytest.approx(0.5)


def test_unknown_label_fails_loud() -> None:
    profile = image_profile([("spaceship", 0.9)])
    with pytest.raises(UnknownLabel):
        extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)


def test_neutral_labels_count_but_score_nothing() -> None:
    profile = image_profile([("selfie", 0.9)])
    vector, evidence = extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector == ImageFeatureVector.zero()
    assert [e.detail for e in evidence] == ["selfie"]


def test_threshold_monotonicity() -> None:
    rng = random.Random(11)
    taxonomy = default_taxonomy()
    for _ in range(25):
        profile = random_profile(rng)
        thresholds = sorted(rng.random() for _ in range(3))
        vectors = [
            extract_image_features(profile, taxonomy, t)[0].values() for t in thresholds
        ]
        for lower, higher in zip(vectors, vectors[1:]):
            assert all(h <= l + 1e-12 for l, h in zip(lower, higher))


def test_permuting_items_leaves_vector_unchanged() -> None:
    rng = random.Random(13)
    taxonomy = default_taxonomy()
    for _ in range(25):
        profile = random_profile(rng)
        if len(profile.image_items) < 2:
            continue
        shuffled = list(profile.image_items)
        rng.shuffle(shuffled)
        permuted = SocialProfile(
            user_id=profile.user_id,
            display_name=profile.display_name,
            consent=profile.consent,
            text_items=profile.text_items,
            image_items=tuple(shuffled),
            graph=profile.graph,
        )
        assert (
            extract_image_features(profile, taxonomy, 0.5)[0]
            == extract_image_features(permuted, taxonomy, 0.5)[0]
        )


def test_consent_gate_returns_zero_vector() -> None:
    profile = image_profile([("alcohol", 0.9)], scopes=frozenset({ConsentScope.TEXT}))
    vector, evidence = extract_image_features(profile, UNIT_WEIGHT_TAXONOMY, 0.5)
    assert vector == ImageFeatureVector.zero()
    assert evidence == []


def test_default_taxonomy_has_required_labels() -> None:
    taxonomy = default_taxonomy()
    required = {
        "alcohol",
        "casino",
        "poker_chips",
        "lottery",
        "beach",
        "travel",
        "sports",
        "car",
        "home",
        "fast_food",
        "conference",
    }
    assert required <= set(taxonomy.labels)
    for category in set(LabelCategory) - {LabelCategory.NEUTRAL}:
        assert taxonomy.labels_in(category)


def test_bad_threshold_rejected() -> None:
    with pytest.raises(ValueError):
        extract_image_features(image_profile(), UNIT_WEIGHT_TAXONOMY, 1.5)
