"""End-to-end evaluation of one profile: extract, comply, score, explain."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from .bundle import FeatureBundle
from .compliance import ComplianceVerdict, evaluate_compliance
from .config import PipelineConfig
from .explanation import ExplanationReport, build_query, generate_explanation
from .graph_features import extract_graph_features
from .image_features import extract_image_features
from .knowledge_base import VectorIndex, index_documents, retrieve
from .profiles import SocialProfile
from .scoring import CreditDecision, score
from .text_features import extract_text_features


@dataclass(frozen=True)
class PipelineResult:
    bundle: FeatureBundle
    verdict: ComplianceVerdict
    decision: CreditDecision


class DecisionPipeline:
    """Holds the loaded config plus the built policy index; evaluation is pure."""

    def __init__(self, config: PipelineConfig) -> None:
        self.config = config
        self.index: VectorIndex = index_documents(list(config.corpus), config.kb_dim)

    def extract(self, profile: SocialProfile) -> FeatureBundle:
        v_text, ev_text = extract_text_features(profile, self.config.lexicon)
        v_image, ev_image = extract_image_features(
            profile, self.config.taxonomy, self.config.conf_threshold
        )
        v_graph, ev_graph = extract_graph_features(profile, self.config.gnn)
        return FeatureBundle(
            v_text=v_text,
            v_image=v_image,
            v_graph=v_graph,
            evidence=tuple(ev_text + ev_image + ev_graph),
        )

    def evaluate(
        self,
        profile: SocialProfile,
        *,
        decision_id: str | None = None,
        timestamp: datetime | None = None,
    ) -> PipelineResult:
        bundle = self.extract(profile)
        verdict = evaluate_compliance(
            profile,
            bundle,
            list(self.config.rules),
            lexicon=self.config.lexicon,
            taxonomy=self.config.taxonomy,
        )
        decision = score(
            self.config.scoring,
            bundle,
            verdict,
            user_id=profile.user_id,
            decision_id=decision_id,
            timestamp=timestamp,
        )
        return PipelineResult(bundle=bundle, verdict=verdict, decision=decision)

    def explain(self, result: PipelineResult) -> ExplanationReport:
        query = build_query(result.decision, result.bundle, self.config.scoring)
        hits = retrieve(self.index, query, self.config.kb_k)
        return generate_explanation(
            result.decision, result.bundle, hits, list(self.config.corpus)
        )
