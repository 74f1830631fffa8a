from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

import pytest

from socialcredit.errors import UnknownLexiconCategory
from socialcredit.evidence import Modality
from socialcredit.profiles import (
    ConsentRecord,
    ConsentScope,
    NodeAttrs,
    Sector,
    SocialGraph,
    SocialProfile,
    Source,
    TextItem,
    TextKind,
)
from socialcredit.text_features import (
    JOB_ENTRY_EVIDENCE,
    Lexicon,
    TextFeatureVector,
    default_lexicon,
    extract_text_features,
    tokenize,
)

from randgen import random_profile

_TS = datetime(2025, 1, 1, tzinfo=timezone.utc)
_ALL_SCOPES = frozenset({ConsentScope.TEXT, ConsentScope.IMAGES, ConsentScope.GRAPH})


def text_profile(*items: tuple[str, TextKind], scopes=_ALL_SCOPES, years_apart: int = 0):
    text_items = []
    for i, (text, kind) in enumerate(items):
        source = Source.LINKEDIN if kind is TextKind.JOB_ENTRY else Source.OTHER
        stamp = _TS + timedelta(days=365 * years_apart * i)
        text_items.append(
            TextItem(item_id=f"t{i}", source=source, kind=kind, text=text, timestamp=stamp)
        )
    return SocialProfile(
        user_id="ego",
        display_name="Ego",
        consent=ConsentRecord(granted=True, scopes=scopes, timestamp=_TS),
        text_items=tuple(text_items),
        image_items=(),
        graph=SocialGraph(
            nodes={"ego": NodeAttrs(verified=False, sector=Sector.UNKNOWN)}, edges=()
        ),
    )


def test_tokenize_lowercase_split_non_alnum() -> None:
    assert tokenize("Hello, World! x2") == ["hello", "world", "x2"]


def test_ten_year_career_profile_scores_stable() -> None:
    # The ten-year history arrives as two job entries spanning ten years plus
    # the bio; the bio alone carries no structural job history.
    profile = text_profile(
        ("10 years at a top engineering firm", TextKind.BIO),
        ("Software Engineer at Firm", TextKind.JOB_ENTRY),
        ("Principal Engineer at Firm", TextKind.JOB_ENTRY),
        years_apart=5,
    )
    vector, _ = extract_text_features(profile, default_lexicon())
    assert vector.professional_stability >= 0.5
    assert vector.professional_stability == pytest.approx(0.75)
    assert vector.riba_mentions == 0.0


def test_two_job_entries_without_tenure_span() -> None:
    profile = text_profile(
        ("Engineer", TextKind.JOB_ENTRY),
        ("Senior Engineer", TextKind.JOB_ENTRY),
    )
    vector, evidence = extract_text_features(profile, default_lexicon())
    assert vector.professional_stability == pytest.approx(0.5)
    job_refs = [e for e in evidence if e.detail == JOB_ENTRY_EVIDENCE]
    assert len(job_refs) == 2


def test_zero_text_items_zero_vector_empty_evidence() -> None:
    vector, evidence = extract_text_features(text_profile(), default_lexicon())
    assert vector == TextFeatureVector.zero()
    assert evidence == []


def test_interest_post_flags_riba_with_evidence() -> None:
    profile = text_profile(("making money from interest is easy", TextKind.POST))
    vector, evidence = extract_text_features(profile, default_lexicon())
    assert vector.riba_mentions > 0
    assert any(e.detail == "interest" and e.item_id == "t0" for e in evidence)


def test_mentions_cap_at_one() -> None:
    profile = text_profile(
        (" ".join(["casino bet poker lottery jackpot roulette"] * 3), TextKind.POST)
    )
    vector, _ = extract_text_features(profile, default_lexicon())
    assert vector.gambling_mentions == 1.0


def test_sentiment_polarity_ratio() -> None:
    profile = text_profile(("great great terrible launch", TextKind.POST))
    vector, _ = extract_text_features(profile, default_lexicon())
    assert vector.sentiment == pytest.approx((2 - 1) / 3)


def test_sentiment_bounded() -> None:
    rng = random.Random(5)
    for _ in range(50):
        profile = random_profile(rng)
        vector, _ = extract_text_features(profile, default_lexicon())
        assert -1.0 <= vector.sentiment <= 1.0
        for name in ("riba_mentions", "gambling_mentions", "alcohol_mentions"):
            assert 0.0 <= getattr(vector, name) <= 1.0


def test_multi_token_phrase_match() -> None:
    profile = text_profile(("that bar crawl was long", TextKind.POST))
    vector, evidence = extract_text_features(profile, default_lexicon())
    assert vector.alcohol_mentions == pytest.approx(0.5)
    assert any(e.detail == "bar crawl" for e in evidence)


def test_no_partial_token_match() -> None:
    # "interesting" must not match the term "interest".
    profile = text_profile(("an interesting update", TextKind.POST))
    vector, _ = extract_text_features(profile, default_lexicon())
    assert vector.riba_mentions == 0.0


def test_consent_gate_returns_zero_vector() -> None:
    profile = text_profile(
        ("making money from interest", TextKind.POST),
        scopes=frozenset({ConsentScope.IMAGES}),
    )
    vector, evidence = extract_text_features(profile, default_lexicon())
    assert vector == TextFeatureVector.zero()
    assert evidence == []


def test_default_lexicon_contents_and_determinism() -> None:
    lex = default_lexicon()
    riba_terms = {t for t, _w in lex.terms("riba_mentions")}
    gambling_terms = {t for t, _w in lex.terms("gambling_mentions")}
    assert {"interest", "loan"} <= riba_terms
    assert {"casino", "bet"} <= gambling_terms
    assert default_lexicon() == lex


def test_unknown_lexicon_category_rejected() -> None:
    bad = Lexicon(version="x", categories={"astrology": (("mars", 1.0),)})
    with pytest.raises(UnknownLexiconCategory):
        extract_text_features(text_profile(("hello", TextKind.POST)), bad)


def test_permuting_items_leaves_vector_unchanged() -> None:
    rng = random.Random(99)
    for _ in range(25):
        profile = random_profile(rng)
        if len(profile.text_items) < 2:
            continue
        shuffled = list(profile.text_items)
        rng.shuffle(shuffled)
        permuted = SocialProfile(
            user_id=profile.user_id,
            display_name=profile.display_name,
            consent=profile.consent,
            text_items=tuple(shuffled),
            image_items=profile.image_items,
            graph=profile.graph,
        )
        base, _ = extract_text_features(profile, default_lexicon())
        swapped, _ = extract_text_features(permuted, default_lexicon())
        assert base == swapped


def test_adding_an_item_never_decreases_mentions() -> None:
    rng = random.Random(3)
    lex = default_lexicon()
    for _ in range(30):
        profile = random_profile(rng)
        extra = TextItem(
            item_id="extra",
            source=Source.OTHER,
            kind=TextKind.POST,
            text=" ".join(rng.choices(["casino", "beer", "interest", "coffee"], k=4)),
            timestamp=_TS,
        )
        grown = SocialProfile(
            user_id=profile.user_id,
            display_name=profile.display_name,
            consent=profile.consent,
            text_items=profile.text_items + (extra,),
            image_items=profile.image_items,
            graph=profile.graph,
        )
        before, _ = extract_text_features(profile, lex)
        after, _ = extract_text_features(grown, lex)
        for name in ("riba_mentions", "gambling_mentions", "alcohol_mentions"):
            assert getattr(after, name) >= getattr(before, name)


def test_evidence_terms_occur_in_referenced_items() -> None:
    rng = random.Random(17)
    lex = default_lexicon()
    for _ in range(40):
        profile = random_profile(rng)
        _, evidence = extract_text_features(profile, lex)
        for ref in evidence:
            assert ref.modality is Modality.TEXT
            item = profile.find_text_item(ref.item_id)
            assert item is not None
            if ref.detail == JOB_ENTRY_EVIDENCE:
                assert item.kind is TextKind.JOB_ENTRY
            else:
                tokens = tokenize(item.text)
                phrase = ref.detail.split()
                m = len(phrase)
                assert any(
                    tokens[i : i + m] == phrase for i in range(len(tokens) - m + 1)
                ), f"{ref.detail!r} not in {item.text!r}"


def test_every_nonzero_component_has_evidence() -> None:
    rng = random.Random(23)
    lex = default_lexicon()
    for _ in range(40):
        profile = random_profile(rng)
        vector, evidence = extract_text_features(profile, lex)
        if any(v != 0 for v in vector.values()):
            assert evidence
