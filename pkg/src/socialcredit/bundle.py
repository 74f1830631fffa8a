"""The fused three-modality feature bundle handed to compliance and scoring."""

from __future__ import annotations

from dataclasses import dataclass

from .evidence import EvidenceRef
from .graph_features import GraphFeatureVector, graph_feature_names
from .image_features import IMAGE_FEATURE_NAMES, ImageFeatureVector
from .text_features import TEXT_FEATURE_NAMES, TextFeatureVector


@dataclass(frozen=True)
class FeatureBundle:
    v_text: TextFeatureVector
    v_image: ImageFeatureVector
    v_graph: GraphFeatureVector
    evidence: tuple[EvidenceRef, ...]

    @property
    def graph_dim(self) -> int:
        return len(self.v_graph.ego_embedding)

    def component(self, name: str) -> float:
        """Scalar component lookup across all three modalities by name."""
        if name in TEXT_FEATURE_NAMES:
            return self.v_text.component(name)
        if name in IMAGE_FEATURE_NAMES:
            return self.v_image.component(name)
        if name == "degree_centrality":
            return self.v_graph.degree_centrality
        if name == "clustering_coefficient":
            return self.v_graph.clustering_coefficient
        if name == "verified_neighbor_fraction":
            return self.v_graph.verified_neighbor_fraction
        raise KeyError(name)


def fused_component_names(d: int) -> tuple[str, ...]:
    """Names of the fused vector's components, in concatenation order."""
    return TEXT_FEATURE_NAMES + IMAGE_FEATURE_NAMES + graph_feature_names(d)
