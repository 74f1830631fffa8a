"""Deterministic, citation-bearing narratives for credit decisions.

Rendering is a fixed template over the decision and feature bundle: no text
is generated that cannot be traced to an input value, and every flag must be
grounded in a policy document tagged with its category (loud failure when the
corpus lacks coverage). The generator signature (decision + retrieval hits ->
report) is the seam where an LLM backend could be swapped in.

Factor levels use fixed thresholds: >= 0.6 High, >= 0.3 Medium, > 0 Low,
else None. "Spending Patterns" is a documented heuristic, the inverse of the
mean of the party and alcohol risks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bundle import FeatureBundle, fused_component_names
from .errors import MissingPolicyCoverage
from .knowledge_base import PolicyDocument
from .scoring import CreditDecision, ScoringModel

LEVEL_HIGH = 0.6
LEVEL_MEDIUM = 0.3

RECOMMENDATION_TEXT = (
    "We recommend you remove such content or clarify context before reassessment."
)


def factor_level(value: float) -> str:
    if value >= LEVEL_HIGH:
        return "High"
    if value >= LEVEL_MEDIUM:
        return "Medium"
    if value > 0.0:
        return "Low"
    return "None"


def _spending_label(value: float) -> str:
    if value >= LEVEL_HIGH:
        return "Conservative"
    if value >= LEVEL_MEDIUM:
        return "Moderate"
    return "Elevated"


@dataclass(frozen=True)
class ExplanationReport:
    decision_id: str
    narrative: str
    factor_lines: tuple[str, ...]
    citations: tuple[tuple[str, str, str], ...]  # (rule_id or factor, doc_id, title)
    recommendation: str | None

    def to_dict(self) -> dict:
        return {
            "decision_id": self.decision_id,
            "narrative": self.narrative,
            "factor_lines": list(self.factor_lines),
            "citations": [list(c) for c in self.citations],
            "recommendation": self.recommendation,
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))

    def render_text(self) -> str:
        lines = [self.narrative, ""]
        lines.extend(self.factor_lines)
        if self.citations:
            lines.append("")
            lines.append("Grounding:")
            lines.extend(f"  [{subject}] {doc_id}: {title}" for subject, doc_id, title in self.citations)
        if self.recommendation:
            lines.append("")
            lines.append(f"Recommendation: {self.recommendation}")
        return "\n".join(lines)


def build_query(
    d: CreditDecision, bundle: FeatureBundle, model: ScoringModel | None = None
) -> str:
    """Deterministic retrieval query for a decision.

    Concatenates, in fixed order: each flag's category and policy tag, the
    names of the three largest-magnitude weighted feature contributions, and
    the band name; all lowercase, space-separated. When no model is given the
    contribution weights default to 1.
    """
    parts: list[str] = []
    for flag in d.verdict.flags:
        parts.append(flag.category.value)
        parts.append(flag.policy_tag)

    names = fused_component_names(bundle.graph_dim)
    values = (
        bundle.v_text.values() + bundle.v_image.values() + bundle.v_graph.values()
    )
    if model is not None:
        weights = model.w_t + model.w_i + model.w_g
    else:
        weights = (1.0,) * len(values)
    contributions = [
        (abs(w * v), name) for name, v, w in zip(names, values, weights) if w * v != 0.0
    ]
    contributions.sort(key=lambda pair: (-pair[0], pair[1]))
    parts.extend(name for _magnitude, name in contributions[:3])

    parts.append(d.band.value)
    return " ".join(part.lower() for part in parts)


def _cite(
    flag_rule_id: str,
    category: str,
    hits: list[tuple[str, float]],
    by_id: dict[str, PolicyDocument],
    corpus: list[PolicyDocument],
) -> tuple[str, str, str]:
    for doc_id, _score in hits:
        doc = by_id.get(doc_id)
        if doc is not None and category in doc.tags:
            return (flag_rule_id, doc.doc_id, doc.title)
    # Retrieval missed: fall back to a direct tag lookup over the corpus.
    for doc in sorted(corpus, key=lambda d: d.doc_id):
        if category in doc.tags:
            return (flag_rule_id, doc.doc_id, doc.title)
    raise MissingPolicyCoverage(
        f"no policy document is tagged {category!r} to ground flag {flag_rule_id}"
    )


def generate_explanation(
    d: CreditDecision,
    bundle: FeatureBundle,
    hits: list[tuple[str, float]],
    corpus: list[PolicyDocument],
) -> ExplanationReport:
    """Render the fixed report template, grounding every flag in policy."""
    stability = bundle.v_text.professional_stability
    lifestyle = bundle.v_image.lifestyle_score
    network = bundle.v_graph.verified_neighbor_fraction
    spending = 1.0 - (bundle.v_image.party_risk + bundle.v_image.alcohol_risk) / 2.0

    status = d.verdict.status.value.capitalize()
    n_flags = len(d.verdict.flags)
    factor_lines = (
        f"Job Stability: {factor_level(stability)} {{stability signal {stability:.2f}}}",
        f"Lifestyle: {factor_level(lifestyle)} {{wholesome-content signal {lifestyle:.2f}}}",
        f"Network: {factor_level(network)} {{verified neighbor share {network:.2f}}}",
        f"Spending Patterns: {_spending_label(spending)} {{party and alcohol inverse {spending:.2f}}}",
        f"Compliance: {status} {{{n_flags} flag(s)}}",
    )

    by_id = {doc.doc_id: doc for doc in corpus}
    citations = tuple(
        _cite(flag.rule_id, flag.category.value, hits, by_id, corpus)
        for flag in d.verdict.flags
    )

    band_title = d.band.value.capitalize()
    reasons = [
        f"job stability {factor_level(stability).lower()}",
        f"verified network {factor_level(network).lower()}",
    ]
    reasons.extend(f"{flag.category.value} flag ({flag.rule_id})" for flag in d.verdict.flags)
    sentences = [
        f"Applicant {d.user_id or 'profile'} was assessed across text, image, and network signals.",
        f"Score: {band_title}, reasoning: {'; '.join(reasons)}.",
    ]
    if d.verdict.status.value == "fail":
        sentences.append("The profile carries a non-halal flag in content.")
    elif d.verdict.status.value == "alert":
        sentences.append("A compliance alert requires manual review before final terms.")
    narrative = " ".join(sentences)

    recommendation = RECOMMENDATION_TEXT if d.verdict.status.value == "alert" else None
    return ExplanationReport(
        decision_id=d.decision_id,
        narrative=narrative,
        factor_lines=factor_lines,
        citations=citations,
        recommendation=recommendation,
    )
