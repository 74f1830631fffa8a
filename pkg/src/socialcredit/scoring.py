"""Linear fusion scoring: weighted modality sums minus the compliance penalty.

    raw = w_t . v_text + w_i . v_image + w_g . v_graph - penalty_weight * F

The normalized score is the logistic of the raw score, and the band is cut at
the configured thresholds (closed lower bounds: exactly theta_high is High,
exactly theta_low is Moderate). Verdict caps are structural: a Fail verdict
always lands in the Low band and an Alert verdict can never reach High.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum

from .bundle import FeatureBundle
from .compliance import ComplianceVerdict, VerdictStatus
from .errors import DimensionMismatch
from .profiles import format_timestamp, parse_timestamp


class Band(str, Enum):
    HIGH = "high"
    MODERATE = "moderate"
    LOW = "low"


@dataclass(frozen=True)
class ScoringModel:
    w_t: tuple[float, ...]
    w_i: tuple[float, ...]
    w_g: tuple[float, ...]
    penalty_weight: float  # lambda in the score equation
    theta_high: float = 0.70
    theta_low: float = 0.40
    version: str = "unversioned"

    def __post_init__(self) -> None:
        if len(self.w_t) != 8:
            raise DimensionMismatch(f"w_t must have 8 weights, got {len(self.w_t)}")
        if len(self.w_i) != 6:
            raise DimensionMismatch(f"w_i must have 6 weights, got {len(self.w_i)}")
        if self.penalty_weight < 0:
            raise ValueError("penalty weight must be nonnegative")
        if not 0.0 <= self.theta_low < self.theta_high <= 1.0:
            raise ValueError("need 0 <= theta_low < theta_high <= 1")


@dataclass(frozen=True)
class CreditDecision:
    decision_id: str
    user_id: str
    raw_score: float
    normalized_score: float
    band: Band
    components: dict[str, float]  # text, image, graph, penalty
    verdict: ComplianceVerdict
    model_version: str
    timestamp: datetime

    def to_dict(self) -> dict:
        return {
            "decision_id": self.decision_id,
            "user_id": self.user_id,
            "raw_score": self.raw_score,
            "normalized_score": self.normalized_score,
            "band": self.band.value,
            "components": {
                "text": self.components["text"],
                "image": self.components["image"],
                "graph": self.components["graph"],
                "penalty": self.components["penalty"],
            },
            "verdict": self.verdict.to_dict(),
            "model_version": self.model_version,
            "timestamp": format_timestamp(self.timestamp),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "CreditDecision":
        return cls(
            decision_id=raw["decision_id"],
            user_id=raw["user_id"],
            raw_score=float(raw["raw_score"]),
            normalized_score=float(raw["normalized_score"]),
            band=Band(raw["band"]),
            components={k: float(v) for k, v in raw["components"].items()},
            verdict=ComplianceVerdict.from_dict(raw["verdict"]),
            model_version=raw["model_version"],
            timestamp=parse_timestamp(raw["timestamp"], "decision"),
        )

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))


def fuse(
    v_text: tuple[float, ...], v_image: tuple[float, ...], v_graph: tuple[float, ...]
) -> list[float]:
    """Concatenate the modality vectors in text, image, graph order."""
    if len(v_text) != 8:
        raise DimensionMismatch(f"text vector must have 8 components, got {len(v_text)}")
    if len(v_image) != 6:
        raise DimensionMismatch(f"image vector must have 6 components, got {len(v_image)}")
    if len(v_graph) < 3 or (len(v_graph) - 3) % 2 != 0:
        raise DimensionMismatch(f"graph vector length {len(v_graph)} is not 2d+3")
    return list(v_text) + list(v_image) + list(v_graph)


def _dot(weights: tuple[float, ...], values: tuple[float, ...], name: str) -> float:
    if len(weights) != len(values):
        raise DimensionMismatch(
            f"{name}: {len(weights)} weights vs {len(values)} components"
        )
    total = 0.0
    for w, v in zip(weights, values):
        total += w * v
    return total


def logistic(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def banding(normalized: float, model: ScoringModel) -> Band:
    if normalized >= model.theta_high:
        return Band.HIGH
    if normalized >= model.theta_low:
        return Band.MODERATE
    return Band.LOW


def _default_decision_id(user_id: str, components: dict[str, float]) -> str:
    digest = hashlib.sha256(
        json.dumps({"user_id": user_id, "components": components}, sort_keys=True).encode()
    ).hexdigest()
    return f"dec-{digest[:12]}"


def score(
    model: ScoringModel,
    bundle: FeatureBundle,
    verdict: ComplianceVerdict,
    *,
    user_id: str = "",
    decision_id: str | None = None,
    timestamp: datetime | None = None,
) -> CreditDecision:
    """Apply the score equation and band the result.

    Pure given explicit ``decision_id``/``timestamp`` (the service supplies
    both so stored decisions replay byte-identically); when omitted, the id is
    derived from the inputs and the timestamp is the current time.
    """
    components = {
        "text": _dot(model.w_t, bundle.v_text.values(), "w_t"),
        "image": _dot(model.w_i, bundle.v_image.values(), "w_i"),
        "graph": _dot(model.w_g, bundle.v_graph.values(), "w_g"),
        "penalty": model.penalty_weight * verdict.f_value,
    }
    raw = components["text"] + components["image"] + components["graph"] - components["penalty"]
    normalized = logistic(raw)

    if verdict.status is VerdictStatus.FAIL:
        band = Band.LOW
    elif verdict.status is VerdictStatus.ALERT:
        band = min(banding(normalized, model), Band.MODERATE, key=_band_rank)
    else:
        band = banding(normalized, model)

    return CreditDecision(
        decision_id=decision_id or _default_decision_id(user_id, components),
        user_id=user_id,
        raw_score=raw,
        normalized_score=normalized,
        band=band,
        components=components,
        verdict=verdict,
        model_version=model.version,
        timestamp=timestamp or datetime.now(timezone.utc),
    )


_BAND_RANK = {Band.HIGH: 2, Band.MODERATE: 1, Band.LOW: 0}


def _band_rank(band: Band) -> int:
    return _BAND_RANK[band]
