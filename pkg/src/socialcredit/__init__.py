"""Deterministic alternative-data credit decisioning pipeline."""

from .bundle import FeatureBundle, fused_component_names
from .compliance import (
    ComplianceFlag,
    ComplianceRule,
    ComplianceVerdict,
    Severity,
    VerdictStatus,
    default_ruleset,
    evaluate_compliance,
)
from .config import PipelineConfig, default_config, load_config, resolve_config
from .errors import SocialCreditError
from .evidence import EvidenceRef, Modality
from .explanation import ExplanationReport, build_query, generate_explanation
from .graph_features import (
    GnnParams,
    GraphFeatureVector,
    extract_graph_features,
    gnn_step,
    graph_metrics,
    init_embeddings,
)
from .image_features import (
    ImageFeatureVector,
    ImageTaxonomy,
    default_taxonomy,
    extract_image_features,
)
from .knowledge_base import (
    PolicyDocument,
    VectorIndex,
    embed_text,
    index_documents,
    load_corpus,
    retrieve,
)
from .pipeline import DecisionPipeline, PipelineResult
from .profiles import SocialProfile, emit_profile, parse_profile
from .scoring import Band, CreditDecision, ScoringModel, banding, fuse, score
from .service import (
    Application,
    ApplicationStatus,
    DecisionService,
    ReviewAction,
    ReviewActionKind,
    WhatIfRequest,
)
from .store import AuditEvent, AuditKind, FileStore
from .synthetic import Archetype, synthesize_profile
from .text_features import Lexicon, TextFeatureVector, default_lexicon, extract_text_features

__version__ = "0.1.0"

__all__ = [
    "Application",
    "ApplicationStatus",
    "Archetype",
    "AuditEvent",
    "AuditKind",
    "Band",
    "ComplianceFlag",
    "ComplianceRule",
    "ComplianceVerdict",
    "CreditDecision",
    "DecisionPipeline",
    "DecisionService",
    "EvidenceRef",
    "ExplanationReport",
    "FeatureBundle",
    "FileStore",
    "GnnParams",
    "GraphFeatureVector",
    "ImageFeatureVector",
    "ImageTaxonomy",
    "Lexicon",
    "Modality",
    "PipelineConfig",
    "PipelineResult",
    "PolicyDocument",
    "ReviewAction",
    "ReviewActionKind",
    "ScoringModel",
    "Severity",
    "SocialCreditError",
    "SocialProfile",
    "TextFeatureVector",
    "VectorIndex",
    "VerdictStatus",
    "WhatIfRequest",
    "banding",
    "build_query",
    "default_config",
    "default_lexicon",
    "default_ruleset",
    "default_taxonomy",
    "embed_text",
    "emit_profile",
    "evaluate_compliance",
    "extract_graph_features",
    "extract_image_features",
    "extract_text_features",
    "fuse",
    "fused_component_names",
    "generate_explanation",
    "gnn_step",
    "graph_metrics",
    "index_documents",
    "init_embeddings",
    "load_config",
    "load_corpus",
    "parse_profile",
    "resolve_config",
    "retrieve",
    "score",
    "synthesize_profile",
]
