"""Maps pre-annotated image labels onto the image modality vector.

No pixel data is ever touched: images arrive as labeled annotations and this
module turns counted labels (confidence at or above the threshold) into six
score components. Each component is the confidence-weighted sum of its
category's counted labels, capped at 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

import yaml

from .errors import SchemaViolation, UnknownLabel
from .evidence import EvidenceRef, Modality
from .profiles import ConsentScope, SocialProfile

DEFAULT_CONF_THRESHOLD = 0.5

IMAGE_FEATURE_NAMES = (
    "lifestyle_score",
    "asset_score",
    "alcohol_risk",
    "gambling_risk",
    "drugs_risk",
    "party_risk",
)


class LabelCategory(str, Enum):
    LIFESTYLE_WHOLESOME = "lifestyle_wholesome"
    ASSET = "asset"
    ALCOHOL = "alcohol"
    GAMBLING = "gambling"
    DRUGS = "drugs"
    PARTY = "party"
    NEUTRAL = "neutral"


_CATEGORY_TO_COMPONENT = {
    LabelCategory.LIFESTYLE_WHOLESOME: "lifestyle_score",
    LabelCategory.ASSET: "asset_score",
    LabelCategory.ALCOHOL: "alcohol_risk",
    LabelCategory.GAMBLING: "gambling_risk",
    LabelCategory.DRUGS: "drugs_risk",
    LabelCategory.PARTY: "party_risk",
}


@dataclass(frozen=True)
class ImageTaxonomy:
    version: str
    labels: dict[str, tuple[LabelCategory, float]]

    def category(self, label: str) -> LabelCategory:
        if label not in self.labels:
            raise UnknownLabel(f"image label {label!r} is not in the taxonomy")
        return self.labels[label][0]

    def labels_in(self, category: LabelCategory) -> set[str]:
        return {label for label, (cat, _w) in self.labels.items() if cat is category}


def _validate_taxonomy(version: str, labels: dict) -> ImageTaxonomy:
    validated: dict[str, tuple[LabelCategory, float]] = {}
    for label, entry in labels.items():
        try:
            category = LabelCategory(entry["category"])
        except ValueError:
            raise SchemaViolation(f"taxonomy label {label!r}: unknown category") from None
        weight = float(entry.get("weight", 1.0))
        if not 0.0 <= weight <= 1.0:
            raise SchemaViolation(f"taxonomy label {label!r}: weight outside [0, 1]")
        validated[str(label)] = (category, weight)
    present = {cat for cat, _w in validated.values()}
    required = set(LabelCategory) - {LabelCategory.NEUTRAL}
    missing = required - present
    if missing:
        raise SchemaViolation(
            f"taxonomy must cover every non-neutral category; missing {sorted(c.value for c in missing)}"
        )
    return ImageTaxonomy(version=version, labels=validated)


def load_taxonomy(path: str) -> ImageTaxonomy:
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    return _validate_taxonomy(str(raw.get("version", "unversioned")), raw.get("labels", {}))


@lru_cache(maxsize=1)
def default_taxonomy() -> ImageTaxonomy:
    raw = yaml.safe_load(
        resources.files("socialcredit.data").joinpath("taxonomy.yaml").read_text("utf-8")
    )
    return _validate_taxonomy(str(raw["version"]), raw["labels"])


@dataclass(frozen=True)
class ImageFeatureVector:
    lifestyle_score: float
    asset_score: float
    alcohol_risk: float
    gambling_risk: float
    drugs_risk: float
    party_risk: float

    def values(self) -> tuple[float, ...]:
        return (
            self.lifestyle_score,
            self.asset_score,
            self.alcohol_risk,
            self.gambling_risk,
            self.drugs_risk,
            self.party_risk,
        )

    def component(self, name: str) -> float:
        return getattr(self, name)

    @classmethod
    def zero(cls) -> "ImageFeatureVector":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def extract_image_features(
    p: SocialProfile, tax: ImageTaxonomy, conf_threshold: float = DEFAULT_CONF_THRESHOLD
) -> tuple[ImageFeatureVector, list[EvidenceRef]]:
    """Turn counted labels into the image vector plus per-label evidence.

    A label counts iff its confidence is at or above ``conf_threshold``.
    Labels absent from the taxonomy fail loudly. Without image consent the
    zero vector is returned.
    """
    if not 0.0 <= conf_threshold <= 1.0:
        raise ValueError("conf_threshold must be in [0, 1]")
    if not p.consent.allows(ConsentScope.IMAGES):
        return ImageFeatureVector.zero(), []

    # Accumulate in canonical (label, item) order so item permutation cannot
    # change the floating-point result.
    counted: list[tuple[str, str, float, LabelCategory, float]] = []
    for item in p.image_items:
        for label in item.labels:
            if label.label not in tax.labels:
                raise UnknownLabel(f"image label {label.label!r} is not in the taxonomy")
            if label.confidence >= conf_threshold:
                category, weight = tax.labels[label.label]
                counted.append((label.label, item.item_id, label.confidence, category, weight))

    sums = {name: 0.0 for name in IMAGE_FEATURE_NAMES}
    evidence: list[EvidenceRef] = []
    for label_name, item_id, confidence, category, weight in sorted(
        counted, key=lambda c: (c[0], c[1], c[2])
    ):
        component = _CATEGORY_TO_COMPONENT.get(category)
        if component is not None:
            sums[component] += weight * confidence
        evidence.append(EvidenceRef(item_id, Modality.IMAGE, label_name))

    vector = ImageFeatureVector(**{name: min(1.0, sums[name]) for name in IMAGE_FEATURE_NAMES})
    return vector, evidence
