"""Pipeline configuration: one structured document wires every stage.

Keys: ``gnn.*`` (d, k, activation, w row-major, b), ``score.*`` (w_t, w_i,
w_g, lambda, theta_high, theta_low, version), ``image.conf_threshold``,
``kb.dim``, ``kb.k``, and ``paths`` to the lexicon, taxonomy, ruleset, and
corpus. Relative paths resolve against the config file's directory. The
``SOCIALCREDIT_CONFIG`` environment variable supplies the config path when
none is given; with neither, the packaged defaults load.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .compliance import ComplianceRule, default_ruleset, load_ruleset
from .errors import DimensionMismatch
from .graph_features import GnnParams
from .image_features import (
    DEFAULT_CONF_THRESHOLD,
    ImageTaxonomy,
    default_taxonomy,
    load_taxonomy,
)
from .knowledge_base import (
    DEFAULT_DIM,
    DEFAULT_TOP_K,
    PolicyDocument,
    load_corpus,
)
from .scoring import ScoringModel
from .text_features import Lexicon, default_lexicon, load_lexicon

ENV_CONFIG_PATH = "SOCIALCREDIT_CONFIG"


@dataclass(frozen=True)
class PipelineConfig:
    gnn: GnnParams
    scoring: ScoringModel
    conf_threshold: float
    kb_dim: int
    kb_k: int
    lexicon: Lexicon
    taxonomy: ImageTaxonomy
    rules: tuple[ComplianceRule, ...]
    corpus: tuple[PolicyDocument, ...]

    def __post_init__(self) -> None:
        expected = 2 * self.gnn.d + 3
        if len(self.scoring.w_g) != expected:
            raise DimensionMismatch(
                f"w_g must have {expected} weights for d={self.gnn.d}, "
                f"got {len(self.scoring.w_g)}"
            )


def _gnn_from_raw(raw: dict) -> GnnParams:
    d = int(raw.get("d", 8))
    k = int(raw.get("k", 2))
    activation = str(raw.get("activation", "tanh"))
    if "w" in raw:
        w = np.asarray(raw["w"], dtype=float).reshape(d, d)
    else:
        w = 0.5 * np.eye(d)
    b = np.asarray(raw["b"], dtype=float) if "b" in raw else np.zeros(d)
    return GnnParams(d=d, k=k, w=w, b=b, activation=activation)


def _scoring_from_raw(raw: dict) -> ScoringModel:
    return ScoringModel(
        w_t=tuple(float(x) for x in raw["w_t"]),
        w_i=tuple(float(x) for x in raw["w_i"]),
        w_g=tuple(float(x) for x in raw["w_g"]),
        penalty_weight=float(raw["lambda"]),
        theta_high=float(raw.get("theta_high", 0.70)),
        theta_low=float(raw.get("theta_low", 0.40)),
        version=str(raw.get("version", "unversioned")),
    )


def _config_from_raw(raw: dict, base_dir: Path) -> PipelineConfig:
    paths = raw.get("paths", {})

    def resolved(key: str) -> Path | None:
        value = paths.get(key)
        if value is None:
            return None
        p = Path(value)
        return p if p.is_absolute() else base_dir / p

    lexicon_path = resolved("lexicon")
    taxonomy_path = resolved("taxonomy")
    ruleset_path = resolved("ruleset")
    corpus_path = resolved("corpus")

    image_raw = raw.get("image", {})
    kb_raw = raw.get("kb", {})
    return PipelineConfig(
        gnn=_gnn_from_raw(raw.get("gnn", {})),
        scoring=_scoring_from_raw(raw["score"]),
        conf_threshold=float(image_raw.get("conf_threshold", DEFAULT_CONF_THRESHOLD)),
        kb_dim=int(kb_raw.get("dim", DEFAULT_DIM)),
        kb_k=int(kb_raw.get("k", DEFAULT_TOP_K)),
        lexicon=load_lexicon(str(lexicon_path)) if lexicon_path else default_lexicon(),
        taxonomy=load_taxonomy(str(taxonomy_path)) if taxonomy_path else default_taxonomy(),
        rules=tuple(load_ruleset(str(ruleset_path)) if ruleset_path else default_ruleset()),
        corpus=tuple(load_corpus(corpus_path) if corpus_path else _default_corpus()),
    )


def _default_corpus() -> list[PolicyDocument]:
    corpus_dir = resources.files("socialcredit.data").joinpath("corpus")
    with resources.as_file(corpus_dir) as path:
        return load_corpus(path)


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    return _config_from_raw(raw, path.parent.resolve())


def default_config() -> PipelineConfig:
    """The packaged default configuration (calibrated weights included)."""
    config_file = resources.files("socialcredit.data").joinpath("config.yaml")
    raw = yaml.safe_load(config_file.read_text("utf-8"))
    return _config_from_raw(raw, Path())


def resolve_config(path: str | None = None) -> PipelineConfig:
    """Priority: explicit path, then $SOCIALCREDIT_CONFIG, then defaults."""
    if path:
        return load_config(path)
    env_path = os.environ.get(ENV_CONFIG_PATH)
    if env_path:
        return load_config(env_path)
    return default_config()
