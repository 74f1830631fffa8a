"""Graded ethics rule engine: Pass / Alert / Fail with evidence-backed flags.

A rule fires when its trigger predicate holds over the feature bundle and
profile; every fired rule contributes exactly one flag carrying the evidence
items that satisfied it. The verdict grade fixes the score penalty input:
Pass -> 0.0, Alert -> 0.5, Fail -> 1.0, and any flag puts the account in
review.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

import yaml

from .bundle import FeatureBundle
from .errors import InvalidRule
from .evidence import EvidenceRef, Modality
from .graph_features import GRAPH_METRIC_NAMES
from .image_features import (
    IMAGE_FEATURE_NAMES,
    ImageTaxonomy,
    LabelCategory,
    default_taxonomy,
)
from .profiles import Sector, SocialProfile
from .text_features import (
    JOB_ENTRY_EVIDENCE,
    TEXT_FEATURE_NAMES,
    Lexicon,
    default_lexicon,
    tokenize,
)

SCALAR_FEATURES = TEXT_FEATURE_NAMES + IMAGE_FEATURE_NAMES + GRAPH_METRIC_NAMES

_OPS = {
    "gt": lambda a, b: a > b,
    "ge": lambda a, b: a >= b,
    "lt": lambda a, b: a < b,
    "le": lambda a, b: a <= b,
    "eq": lambda a, b: a == b,
}

_IMAGE_COMPONENT_CATEGORY = {
    "lifestyle_score": LabelCategory.LIFESTYLE_WHOLESOME,
    "asset_score": LabelCategory.ASSET,
    "alcohol_risk": LabelCategory.ALCOHOL,
    "gambling_risk": LabelCategory.GAMBLING,
    "drugs_risk": LabelCategory.DRUGS,
    "party_risk": LabelCategory.PARTY,
}


class RuleCategory(str, Enum):
    RIBA = "riba"
    GHARAR = "gharar"
    GAMBLING = "gambling"
    ALCOHOL_DRUGS = "alcohol_drugs"
    ETHICAL_INVESTMENT = "ethical_investment"


class Severity(str, Enum):
    ALERT = "alert"
    FAIL = "fail"


class VerdictStatus(str, Enum):
    PASS = "pass"
    ALERT = "alert"
    FAIL = "fail"


@dataclass(frozen=True)
class TriggerCondition:
    feature: str
    op: str
    value: float


@dataclass(frozen=True)
class Trigger:
    kind: str  # feature_threshold | label_presence | neighbor_sector | text_phrase
    conditions: tuple[TriggerCondition, ...] = ()
    match: str = "all"  # all | any, for feature_threshold
    label_categories: tuple[LabelCategory, ...] = ()
    sectors: tuple[Sector, ...] = ()
    terms: tuple[str, ...] = ()


@dataclass(frozen=True)
class ComplianceRule:
    rule_id: str
    category: RuleCategory
    severity: Severity
    policy_tag: str
    trigger: Trigger


@dataclass(frozen=True)
class ComplianceFlag:
    rule_id: str
    category: RuleCategory
    severity: Severity
    policy_tag: str
    evidence: tuple[EvidenceRef, ...]

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "category": self.category.value,
            "severity": self.severity.value,
            "policy_tag": self.policy_tag,
            "evidence": [e.to_dict() for e in self.evidence],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ComplianceFlag":
        return cls(
            rule_id=raw["rule_id"],
            category=RuleCategory(raw["category"]),
            severity=Severity(raw["severity"]),
            policy_tag=raw["policy_tag"],
            evidence=tuple(EvidenceRef.from_dict(e) for e in raw["evidence"]),
        )


@dataclass(frozen=True)
class ComplianceVerdict:
    status: VerdictStatus
    f_value: float
    flags: tuple[ComplianceFlag, ...]
    review_required: bool

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "f_value": self.f_value,
            "flags": [f.to_dict() for f in self.flags],
            "review_required": self.review_required,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ComplianceVerdict":
        return cls(
            status=VerdictStatus(raw["status"]),
            f_value=float(raw["f_value"]),
            flags=tuple(ComplianceFlag.from_dict(f) for f in raw["flags"]),
            review_required=bool(raw["review_required"]),
        )

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))


def validate_rules(rules: list[ComplianceRule]) -> None:
    """Reject rules with dangling feature/category/sector references."""
    seen_ids: set[str] = set()
    for rule in rules:
        if rule.rule_id in seen_ids:
            raise InvalidRule(f"duplicate rule_id {rule.rule_id!r}")
        seen_ids.add(rule.rule_id)
        trig = rule.trigger
        if trig.kind == "feature_threshold":
            if not trig.conditions:
                raise InvalidRule(f"{rule.rule_id}: feature_threshold needs conditions")
            if trig.match not in ("all", "any"):
                raise InvalidRule(f"{rule.rule_id}: match must be 'all' or 'any'")
            for cond in trig.conditions:
                if cond.feature not in SCALAR_FEATURES:
                    raise InvalidRule(
                        f"{rule.rule_id}: unknown feature component {cond.feature!r}"
                    )
                if cond.op not in _OPS:
                    raise InvalidRule(f"{rule.rule_id}: unknown operator {cond.op!r}")
        elif trig.kind == "label_presence":
            if not trig.label_categories:
                raise InvalidRule(f"{rule.rule_id}: label_presence needs categories")
        elif trig.kind == "neighbor_sector":
            if not trig.sectors:
                raise InvalidRule(f"{rule.rule_id}: neighbor_sector needs sectors")
        elif trig.kind == "text_phrase":
            if not trig.terms or any(not t.strip() for t in trig.terms):
                raise InvalidRule(f"{rule.rule_id}: text_phrase needs nonempty terms")
        else:
            raise InvalidRule(f"{rule.rule_id}: unknown trigger kind {trig.kind!r}")


# --- evidence attribution -----------------------------------------------------

def _text_terms_for(feature: str, lex: Lexicon) -> set[str]:
    if feature == "sentiment":
        return {t for t, _w in lex.terms("positive")} | {t for t, _w in lex.terms("negative")}
    return {t for t, _w in lex.terms(feature)}


def _evidence_for_feature(
    feature: str, bundle: FeatureBundle, lex: Lexicon, tax: ImageTaxonomy
) -> list[EvidenceRef]:
    if feature == "professional_stability":
        return [
            e
            for e in bundle.evidence
            if e.modality is Modality.TEXT and e.detail == JOB_ENTRY_EVIDENCE
        ]
    if feature in TEXT_FEATURE_NAMES:
        terms = _text_terms_for(feature, lex)
        return [
            e for e in bundle.evidence if e.modality is Modality.TEXT and e.detail in terms
        ]
    if feature in IMAGE_FEATURE_NAMES:
        category = _IMAGE_COMPONENT_CATEGORY[feature]
        labels = tax.labels_in(category)
        return [
            e for e in bundle.evidence if e.modality is Modality.IMAGE and e.detail in labels
        ]
    return [
        e for e in bundle.evidence if e.modality is Modality.GRAPH and e.detail == feature
    ]


def _eval_trigger(
    rule: ComplianceRule,
    p: SocialProfile,
    bundle: FeatureBundle,
    lex: Lexicon,
    tax: ImageTaxonomy,
) -> tuple[bool, list[EvidenceRef]]:
    trig = rule.trigger

    if trig.kind == "feature_threshold":
        hits = [
            cond
            for cond in trig.conditions
            if _OPS[cond.op](bundle.component(cond.feature), cond.value)
        ]
        fired = len(hits) == len(trig.conditions) if trig.match == "all" else bool(hits)
        if not fired:
            return False, []
        evidence: list[EvidenceRef] = []
        for cond in hits if trig.match == "any" else trig.conditions:
            for ref in _evidence_for_feature(cond.feature, bundle, lex, tax):
                if ref not in evidence:
                    evidence.append(ref)
        if not evidence:
            # Threshold rules on absence (e.g. "lifestyle below x") have no
            # content to point at; anchor the flag to the ego node instead.
            evidence = [
                EvidenceRef(p.user_id, Modality.GRAPH, f"feature:{trig.conditions[0].feature}")
            ]
        return True, evidence

    if trig.kind == "label_presence":
        wanted = set(trig.label_categories)
        evidence = []
        for item in p.image_items:
            for label in item.labels:
                info = tax.labels.get(label.label)
                if info is not None and info[0] in wanted:
                    ref = EvidenceRef(item.item_id, Modality.IMAGE, label.label)
                    if ref not in evidence:
                        evidence.append(ref)
        return bool(evidence), evidence

    if trig.kind == "neighbor_sector":
        wanted_sectors = set(trig.sectors)
        evidence = []
        neighbors = sorted(u for u, _w in p.graph.neighbors(p.user_id))
        for node_id in neighbors:
            sector = p.graph.nodes[node_id].sector
            if sector in wanted_sectors:
                evidence.append(
                    EvidenceRef(
                        p.user_id, Modality.GRAPH, f"neighbor {node_id} sector {sector.value}"
                    )
                )
        return bool(evidence), evidence

    # text_phrase
    evidence = []
    for item in p.text_items:
        tokens = tokenize(item.text)
        for term in trig.terms:
            phrase = tokenize(term)
            m = len(phrase)
            if m and any(tokens[i : i + m] == phrase for i in range(len(tokens) - m + 1)):
                ref = EvidenceRef(item.item_id, Modality.TEXT, term.lower())
                if ref not in evidence:
                    evidence.append(ref)
    return bool(evidence), evidence


def evaluate_compliance(
    p: SocialProfile,
    features: FeatureBundle,
    rules: list[ComplianceRule],
    lexicon: Lexicon | None = None,
    taxonomy: ImageTaxonomy | None = None,
) -> ComplianceVerdict:
    """Evaluate every rule and grade the verdict.

    The lexicon and taxonomy are only used to attribute evidence items to the
    feature component a rule references; they default to the shipped ones.
    Flags are ordered by rule_id so the verdict serializes identically for
    identical inputs.
    """
    validate_rules(rules)
    lex = lexicon or default_lexicon()
    tax = taxonomy or default_taxonomy()

    flags: list[ComplianceFlag] = []
    for rule in sorted(rules, key=lambda r: r.rule_id):
        fired, evidence = _eval_trigger(rule, p, features, lex, tax)
        if fired:
            flags.append(
                ComplianceFlag(
                    rule_id=rule.rule_id,
                    category=rule.category,
                    severity=rule.severity,
                    policy_tag=rule.policy_tag,
                    evidence=tuple(evidence),
                )
            )

    if not flags:
        return ComplianceVerdict(VerdictStatus.PASS, 0.0, (), False)
    if any(f.severity is Severity.FAIL for f in flags):
        return ComplianceVerdict(VerdictStatus.FAIL, 1.0, tuple(flags), True)
    return ComplianceVerdict(VerdictStatus.ALERT, 0.5, tuple(flags), True)


# --- ruleset loading ----------------------------------------------------------

def _rule_from_dict(raw: dict) -> ComplianceRule:
    trig_raw = raw.get("trigger")
    if not isinstance(trig_raw, dict) or "kind" not in trig_raw:
        raise InvalidRule(f"rule {raw.get('rule_id')!r}: trigger.kind is required")
    kind = trig_raw["kind"]
    try:
        trigger = Trigger(
            kind=kind,
            conditions=tuple(
                TriggerCondition(c["feature"], c["op"], float(c["value"]))
                for c in trig_raw.get("conditions", [])
            ),
            match=trig_raw.get("match", "all"),
            label_categories=tuple(
                LabelCategory(c) for c in trig_raw.get("categories", [])
            ),
            sectors=tuple(Sector(s) for s in trig_raw.get("sectors", [])),
            terms=tuple(str(t) for t in trig_raw.get("terms", [])),
        )
        return ComplianceRule(
            rule_id=str(raw["rule_id"]),
            category=RuleCategory(raw["category"]),
            severity=Severity(raw["severity"]),
            policy_tag=str(raw["policy_tag"]),
            trigger=trigger,
        )
    except (KeyError, ValueError) as exc:
        raise InvalidRule(f"rule {raw.get('rule_id')!r}: {exc}") from exc


def load_ruleset(path: str) -> list[ComplianceRule]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    rules = [_rule_from_dict(r) for r in raw.get("rules", [])]
    validate_rules(rules)
    return rules


@lru_cache(maxsize=1)
def _default_rules() -> tuple[ComplianceRule, ...]:
    raw = yaml.safe_load(
        resources.files("socialcredit.data").joinpath("ruleset.yaml").read_text("utf-8")
    )
    rules = [_rule_from_dict(r) for r in raw["rules"]]
    validate_rules(rules)
    return tuple(rules)


def default_ruleset() -> list[ComplianceRule]:
    """The frozen default rules shipped with the package."""
    return list(_default_rules())
