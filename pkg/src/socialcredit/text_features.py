"""Lexicon-driven extraction of the text modality vector.

Matching is intentionally simple and auditable: text is lowercased and split
on non-alphanumeric characters, and a lexicon term matches either a single
token or a consecutive token phrase. Mention-style components accumulate the
weights of every match and are capped at 1.0, so repeated exposure counts
more than a single occurrence. ``professional_stability`` is structural: it
is computed from job-history items, not from terms (0.25 per job entry plus a
0.25 bonus when the job entries span at least five years, capped at 1.0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import timedelta
from functools import lru_cache
from importlib import resources

import yaml

from .errors import SchemaViolation, UnknownLexiconCategory
from .evidence import EvidenceRef, Modality
from .profiles import ConsentScope, SocialProfile, TextKind

TEXT_FEATURE_NAMES = (
    "professional_stability",
    "education_signal",
    "sentiment",
    "community_charity",
    "riba_mentions",
    "gambling_mentions",
    "alcohol_mentions",
    "spending_conservatism",
)

# Categories that accumulate matched-term weights directly.
_TERM_DRIVEN = (
    "education_signal",
    "community_charity",
    "riba_mentions",
    "gambling_mentions",
    "alcohol_mentions",
    "spending_conservatism",
)

# Full category schema a lexicon may declare: the eight feature names plus
# the polarity lists backing the sentiment component.
LEXICON_CATEGORIES = TEXT_FEATURE_NAMES + ("positive", "negative")

# Detail string used for structural (non-term) job-history evidence.
JOB_ENTRY_EVIDENCE = "job_entry"

_TENURE_BONUS_SPAN = timedelta(days=5 * 365)
_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Lexicon:
    version: str
    categories: dict[str, tuple[tuple[str, float], ...]]

    def terms(self, category: str) -> tuple[tuple[str, float], ...]:
        return self.categories.get(category, ())

    def category_of_term(self, term: str) -> str | None:
        for category, terms in self.categories.items():
            if any(t == term for t, _ in terms):
                return category
        return None


def _validate_lexicon(version: str, categories: dict) -> Lexicon:
    validated: dict[str, tuple[tuple[str, float], ...]] = {}
    for category, terms in categories.items():
        if category not in LEXICON_CATEGORIES:
            raise UnknownLexiconCategory(
                f"lexicon category {category!r} is outside the text-feature schema"
            )
        seen: set[str] = set()
        entries: list[tuple[str, float]] = []
        for entry in terms or []:
            term = str(entry["term"]).lower().strip()
            if not term:
                raise SchemaViolation(f"lexicon {category}: empty term")
            if term in seen:
                raise SchemaViolation(f"lexicon {category}: duplicate term {term!r}")
            seen.add(term)
            entries.append((term, float(entry.get("weight", 1.0))))
        validated[category] = tuple(entries)
    return Lexicon(version=version, categories=validated)


def load_lexicon(path: str) -> Lexicon:
    """Load a lexicon file (YAML with ``version`` and ``categories.<name>``)."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    return _validate_lexicon(str(raw.get("version", "unversioned")), raw.get("categories", {}))


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    """The frozen built-in lexicon shipped with the package."""
    raw = yaml.safe_load(
        resources.files("socialcredit.data").joinpath("lexicon.yaml").read_text("utf-8")
    )
    return _validate_lexicon(str(raw["version"]), raw["categories"])


@dataclass(frozen=True)
class TextFeatureVector:
    professional_stability: float
    education_signal: float
    sentiment: float
    community_charity: float
    riba_mentions: float
    gambling_mentions: float
    alcohol_mentions: float
    spending_conservatism: float

    def values(self) -> tuple[float, ...]:
        return (
            self.professional_stability,
            self.education_signal,
            self.sentiment,
            self.community_charity,
            self.riba_mentions,
            self.gambling_mentions,
            self.alcohol_mentions,
            self.spending_conservatism,
        )

    def component(self, name: str) -> float:
        return getattr(self, name)

    @classmethod
    def zero(cls) -> "TextFeatureVector":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def _count_phrase(tokens: list[str], phrase: list[str]) -> int:
    m = len(phrase)
    if m == 0 or m > len(tokens):
        return 0
    return sum(1 for i in range(len(tokens) - m + 1) if tokens[i : i + m] == phrase)


def extract_text_features(
    p: SocialProfile, lex: Lexicon
) -> tuple[TextFeatureVector, list[EvidenceRef]]:
    """Extract the text modality vector with one evidence ref per match site.

    Without text consent the zero vector is returned with no evidence.
    """
    for category in lex.categories:
        if category not in LEXICON_CATEGORIES:
            raise UnknownLexiconCategory(f"lexicon category {category!r} outside schema")

    if not p.consent.allows(ConsentScope.TEXT):
        return TextFeatureVector.zero(), []

    tokenized = [(item, tokenize(item.text)) for item in p.text_items]

    # Per-term occurrence totals, folded in fixed lexicon order so the result
    # is exactly invariant under item permutation.
    evidence: list[EvidenceRef] = []
    term_totals: dict[tuple[str, str], int] = {}
    for item, tokens in tokenized:
        for category in _TERM_DRIVEN + ("positive", "negative"):
            for term, _weight in lex.terms(category):
                count = _count_phrase(tokens, term.split())
                if count:
                    term_totals[(category, term)] = term_totals.get((category, term), 0) + count
                    evidence.append(EvidenceRef(item.item_id, Modality.TEXT, term))

    def category_sum(category: str) -> float:
        total = 0.0
        for term, weight in lex.terms(category):
            count = term_totals.get((category, term), 0)
            if count:
                total += weight * count
        return min(1.0, total)

    job_entries = [item for item in p.text_items if item.kind is TextKind.JOB_ENTRY]
    stability = 0.25 * len(job_entries)
    if len(job_entries) >= 2:
        stamps = [item.timestamp for item in job_entries]
        if max(stamps) - min(stamps) >= _TENURE_BONUS_SPAN:
            stability += 0.25
    stability = min(1.0, stability)
    for item in job_entries:
        evidence.append(EvidenceRef(item.item_id, Modality.TEXT, JOB_ENTRY_EVIDENCE))

    positive = sum(c for (cat, _t), c in term_totals.items() if cat == "positive")
    negative = sum(c for (cat, _t), c in term_totals.items() if cat == "negative")
    sentiment = (positive - negative) / max(1, positive + negative)

    vector = TextFeatureVector(
        professional_stability=stability,
        education_signal=category_sum("education_signal"),
        sentiment=sentiment,
        community_charity=category_sum("community_charity"),
        riba_mentions=category_sum("riba_mentions"),
        gambling_mentions=category_sum("gambling_mentions"),
        alcohol_mentions=category_sum("alcohol_mentions"),
        spending_conservatism=category_sum("spending_conservatism"),
    )
    return vector, evidence
