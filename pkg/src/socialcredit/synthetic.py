"""Deterministic synthetic profiles for the three scenario archetypes.

Each archetype is a pure function of (archetype, seed): the RNG only varies
cosmetic detail (names, confidences, timestamps) inside ranges that keep the
archetype contract intact:

* professional_prudent - two or more job entries, no haram labels, five
  neighbors with a verified majority.
* sparse_risky - at most one job entry, alcohol imagery at confidence >= 0.8,
  at most two neighbors.
* moderate_alert - strong job history, exactly one casino-labeled image, and
  at least one finance-sector neighbor.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone
from enum import Enum

from .profiles import (
    ConsentRecord,
    ConsentScope,
    ImageItem,
    ImageLabel,
    NodeAttrs,
    Sector,
    SocialGraph,
    SocialProfile,
    Source,
    TextItem,
    TextKind,
)


class Archetype(str, Enum):
    PROFESSIONAL_PRUDENT = "professional_prudent"
    SPARSE_RISKY = "sparse_risky"
    MODERATE_ALERT = "moderate_alert"


_BASE = datetime(2025, 6, 1, 12, 0, 0, tzinfo=timezone.utc)

_FIRM_NAMES = ("Nordwave Systems", "Atlas Forge", "Brightline Works", "Keystone Labs")
_FIRST_NAMES = ("Amira", "Bilal", "Chloe", "Danish", "Elif", "Farid", "Grace", "Hamza")
_LAST_NAMES = ("Rahman", "Okafor", "Silva", "Yildiz", "Khan", "Novak", "Haddad", "Iqbal")


def _ts(days_before: int, minute: int = 0) -> datetime:
    return _BASE - timedelta(days=days_before, minutes=minute)


def _consent() -> ConsentRecord:
    return ConsentRecord(
        granted=True,
        scopes=frozenset({ConsentScope.TEXT, ConsentScope.IMAGES, ConsentScope.GRAPH}),
        timestamp=_ts(400),
    )


def _display_name(rng: random.Random) -> str:
    return f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}"


def _image(item_id: str, labels: list[tuple[str, float]], days_before: int) -> ImageItem:
    return ImageItem(
        item_id=item_id,
        source=Source.INSTAGRAM,
        labels=tuple(ImageLabel(label, round(conf, 3)) for label, conf in labels),
        timestamp=_ts(days_before),
    )


def _professional_prudent(rng: random.Random, seed: int) -> SocialProfile:
    user_id = f"user-prudent-{seed:x}"
    firm = rng.choice(_FIRM_NAMES)
    text_items = (
        TextItem(
            item_id="t1",
            source=Source.LINKEDIN,
            kind=TextKind.BIO,
            text=(
                f"Senior engineer with 10 years at a top engineering firm. Proud to "
                f"volunteer with a local charity and happy to mentor graduates."
            ),
            timestamp=_ts(30),
        ),
        TextItem(
            item_id="t2",
            source=Source.LINKEDIN,
            kind=TextKind.JOB_ENTRY,
            text=f"Software Engineer at {firm}",
            timestamp=_ts(3650),
        ),
        TextItem(
            item_id="t3",
            source=Source.LINKEDIN,
            kind=TextKind.JOB_ENTRY,
            text=f"Principal Engineer at {firm}",
            timestamp=_ts(120),
        ),
    )
    image_items = (
        _image("i1", [("family", rng.uniform(0.8, 0.95))], 10),
        _image("i2", [("travel", rng.uniform(0.75, 0.95)), ("beach", rng.uniform(0.6, 0.8))], 60),
        _image("i3", [("sports", rng.uniform(0.7, 0.9))], 90),
        _image("i4", [("conference", rng.uniform(0.75, 0.9)), ("home", rng.uniform(0.6, 0.85))], 150),
    )
    neighbors = {
        "n1": NodeAttrs(verified=True, sector=Sector.ENGINEERING),
        "n2": NodeAttrs(verified=True, sector=Sector.ENGINEERING),
        "n3": NodeAttrs(verified=True, sector=Sector.FINANCE),
        "n4": NodeAttrs(verified=True, sector=Sector.EDUCATION),
        "n5": NodeAttrs(verified=False, sector=Sector.RETAIL),
    }
    nodes = {user_id: NodeAttrs(verified=True, sector=Sector.ENGINEERING), **neighbors}
    edges = tuple(
        sorted(
            [(min(user_id, n), max(user_id, n), 1.0) for n in neighbors]
            + [("n1", "n2", 1.0), ("n2", "n3", 1.0), ("n3", "n4", 1.0)]
        )
    )
    return SocialProfile(
        user_id=user_id,
        display_name=_display_name(rng),
        consent=_consent(),
        text_items=text_items,
        image_items=image_items,
        graph=SocialGraph(nodes=nodes, edges=edges),
    )


def _sparse_risky(rng: random.Random, seed: int) -> SocialProfile:
    user_id = f"user-sparse-{seed:x}"
    text_items = (
        TextItem(
            item_id="t1",
            source=Source.LINKEDIN,
            kind=TextKind.BIO,
            text="Recent grad figuring things out.",
            timestamp=_ts(200),
        ),
        TextItem(
            item_id="t2",
            source=Source.INSTAGRAM,
            kind=TextKind.POST,
            text="Epic night out clubbing with the crew again",
            timestamp=_ts(5),
        ),
    )
    image_items = (
        _image(
            "i1",
            [("alcohol", rng.uniform(0.82, 0.95)), ("nightclub", rng.uniform(0.7, 0.9))],
            4,
        ),
        _image(
            "i2",
            [("alcohol", rng.uniform(0.8, 0.92)), ("party_crowd", rng.uniform(0.6, 0.85))],
            18,
        ),
        _image("i3", [("selfie", rng.uniform(0.85, 0.95))], 40),
    )
    nodes = {
        user_id: NodeAttrs(verified=False, sector=Sector.UNKNOWN),
        "n1": NodeAttrs(verified=False, sector=Sector.UNKNOWN),
        "n2": NodeAttrs(verified=False, sector=Sector.RETAIL),
    }
    edges = tuple(
        sorted([(min(user_id, n), max(user_id, n), 1.0) for n in ("n1", "n2")])
    )
    return SocialProfile(
        user_id=user_id,
        display_name=_display_name(rng),
        consent=_consent(),
        text_items=text_items,
        image_items=image_items,
        graph=SocialGraph(nodes=nodes, edges=edges),
    )


def _moderate_alert(rng: random.Random, seed: int) -> SocialProfile:
    user_id = f"user-moderate-{seed:x}"
    firm = rng.choice(_FIRM_NAMES)
    text_items = (
        TextItem(
            item_id="t1",
            source=Source.LINKEDIN,
            kind=TextKind.BIO,
            text=(
                "Founder and entrepreneur. Grateful for a great team and proud of the "
                "community we serve."
            ),
            timestamp=_ts(45),
        ),
        TextItem(
            item_id="t2",
            source=Source.LINKEDIN,
            kind=TextKind.JOB_ENTRY,
            text=f"Operations Lead at {firm}",
            timestamp=_ts(2920),
        ),
        TextItem(
            item_id="t3",
            source=Source.LINKEDIN,
            kind=TextKind.JOB_ENTRY,
            text="Founder at own venture",
            timestamp=_ts(365),
        ),
        TextItem(
            item_id="t4",
            source=Source.INSTAGRAM,
            kind=TextKind.POST,
            text="Excited about our successful product launch this quarter",
            timestamp=_ts(20),
        ),
    )
    image_items = (
        _image("i1", [("casino", rng.uniform(0.6, 0.8))], 75),
        _image("i2", [("conference", rng.uniform(0.8, 0.95))], 30),
        _image("i3", [("travel", rng.uniform(0.7, 0.9)), ("family", rng.uniform(0.65, 0.85))], 120),
    )
    nodes = {
        user_id: NodeAttrs(verified=True, sector=Sector.ENGINEERING),
        "n1": NodeAttrs(verified=True, sector=Sector.FINANCE),
        "n2": NodeAttrs(verified=True, sector=Sector.ENGINEERING),
        "n3": NodeAttrs(verified=False, sector=Sector.RETAIL),
        "n4": NodeAttrs(verified=False, sector=Sector.EDUCATION),
    }
    edges = tuple(
        sorted(
            [(min(user_id, n), max(user_id, n), 1.0) for n in ("n1", "n2", "n3", "n4")]
            + [("n1", "n2", 1.0)]
        )
    )
    return SocialProfile(
        user_id=user_id,
        display_name=_display_name(rng),
        consent=_consent(),
        text_items=text_items,
        image_items=image_items,
        graph=SocialGraph(nodes=nodes, edges=edges),
    )


def synthesize_profile(archetype: Archetype | str, seed: int) -> SocialProfile:
    """Deterministic profile for an archetype; same (archetype, seed) in,
    same profile out."""
    archetype = Archetype(archetype)
    rng = random.Random(f"{archetype.value}:{seed}")
    if archetype is Archetype.PROFESSIONAL_PRUDENT:
        return _professional_prudent(rng, seed)
    if archetype is Archetype.SPARSE_RISKY:
        return _sparse_risky(rng, seed)
    return _moderate_alert(rng, seed)
