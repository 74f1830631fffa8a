"""Evidence references tie every extracted signal back to profile content."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .profiles import SocialProfile


class Modality(str, Enum):
    TEXT = "text"
    IMAGE = "image"
    GRAPH = "graph"


@dataclass(frozen=True)
class EvidenceRef:
    """Pointer to the item (or ego node, for graph metrics) behind a signal.

    ``detail`` is the matched term, image label, or metric name.
    """

    item_id: str
    modality: Modality
    detail: str

    def to_dict(self) -> dict:
        return {"item_id": self.item_id, "modality": self.modality.value, "detail": self.detail}

    @classmethod
    def from_dict(cls, raw: dict) -> "EvidenceRef":
        return cls(item_id=raw["item_id"], modality=Modality(raw["modality"]), detail=raw["detail"])


def resolves_in_profile(ref: EvidenceRef, profile: SocialProfile) -> bool:
    """True when the reference points at real profile content."""
    if ref.modality is Modality.TEXT:
        return profile.find_text_item(ref.item_id) is not None
    if ref.modality is Modality.IMAGE:
        return profile.find_image_item(ref.item_id) is not None
    return ref.item_id == profile.user_id
