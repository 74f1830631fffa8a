"""Policy document store: deterministic embeddings and top-k cosine retrieval.

The embedder is a feature-hashed bag of words: each token is hashed with
FNV-1a (64-bit), bucketed modulo the dimension, signed by bit 32 of the hash,
accumulated by term frequency, and L2-normalized. It is fully deterministic
and good enough for tag/keyword-level retrieval over a small policy corpus;
swap in a learned embedder behind the same signature if needed. The index is
a flat exhaustive scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
import yaml

from .errors import DuplicateDocId, EmptyIndex, SchemaViolation
from .text_features import tokenize

DEFAULT_DIM = 256
DEFAULT_TOP_K = 3

_FNV_OFFSET = 14695981039346656037
_FNV_PRIME = 1099511628211
_U64 = 0xFFFFFFFFFFFFFFFF


class DocSource(str, Enum):
    SHARIA_GUIDELINE = "sharia_guideline"
    BANK_POLICY = "bank_policy"


@dataclass(frozen=True)
class PolicyDocument:
    doc_id: str
    title: str
    body: str
    tags: frozenset[str]
    source: DocSource

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise SchemaViolation("policy document needs a doc_id")
        if not self.body:
            raise SchemaViolation(f"policy document {self.doc_id!r} has an empty body")


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _U64
    return h


def embed_text(text: str, d: int = DEFAULT_DIM) -> np.ndarray:
    """Hash tokens into a signed frequency vector and L2-normalize.

    Empty or token-free text embeds to the all-zero vector, which stays
    all-zero (no normalization).
    """
    if d < 2 or d & (d - 1) != 0:
        raise ValueError(f"dimension must be a power of two >= 2, got {d}")
    vec = np.zeros(d)
    for token in tokenize(text):
        h = fnv1a64(token.encode("utf-8"))
        bucket = h % d
        sign = 1.0 if (h >> 32) & 1 == 0 else -1.0
        vec[bucket] += sign
    norm = float(np.linalg.norm(vec))
    if norm > 0.0:
        vec /= norm
    return vec


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Correctly-rounded cosine (fsum), so independent recomputation of the
    same expression is bit-identical and rank order is reproducible."""
    na = math.sqrt(math.fsum(float(x) * float(x) for x in a))
    nb = math.sqrt(math.fsum(float(x) * float(x) for x in b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    dot = math.fsum(float(x) * float(y) for x, y in zip(a, b))
    return dot / (na * nb)


@dataclass(frozen=True)
class VectorIndex:
    entries: dict[str, np.ndarray]
    dimension: int

    def __len__(self) -> int:
        return len(self.entries)


def index_documents(docs: list[PolicyDocument], d: int = DEFAULT_DIM) -> VectorIndex:
    entries: dict[str, np.ndarray] = {}
    for doc in docs:
        if doc.doc_id in entries:
            raise DuplicateDocId(f"doc_id {doc.doc_id!r} appears twice")
        entries[doc.doc_id] = embed_text(f"{doc.title} {doc.body}", d)
    return VectorIndex(entries=entries, dimension=d)


def retrieve(index: VectorIndex, query: str, k: int) -> list[tuple[str, float]]:
    """Top-k documents by cosine similarity, ties broken by ascending doc_id.

    An all-zero query scores 0 against everything, so the tie-break returns
    the k lexically smallest doc_ids.
    """
    if not index.entries:
        raise EmptyIndex("cannot retrieve from an empty index")
    if k < 1:
        raise ValueError("k must be positive")
    q = embed_text(query, index.dimension)
    scored = [(doc_id, cosine(q, emb)) for doc_id, emb in index.entries.items()]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored[:k]


# --- corpus loading -----------------------------------------------------------

def parse_policy_document(text: str, origin: str = "<memory>") -> PolicyDocument:
    """Parse one corpus file: YAML front matter between --- lines, then body."""
    if not text.startswith("---"):
        raise SchemaViolation(f"{origin}: missing front-matter header")
    parts = text.split("---", 2)
    if len(parts) < 3:
        raise SchemaViolation(f"{origin}: unterminated front-matter header")
    header = yaml.safe_load(parts[1]) or {}
    body = parts[2].strip()
    try:
        return PolicyDocument(
            doc_id=str(header["doc_id"]),
            title=str(header["title"]),
            body=body,
            tags=frozenset(str(t) for t in header.get("tags", [])),
            source=DocSource(header["source"]),
        )
    except (KeyError, ValueError) as exc:
        raise SchemaViolation(f"{origin}: bad front matter: {exc}") from exc


def load_corpus(directory: str | Path) -> list[PolicyDocument]:
    """Load every document in a corpus directory, sorted by doc_id."""
    docs = []
    for path in sorted(Path(directory).glob("*.md")):
        docs.append(parse_policy_document(path.read_text("utf-8"), origin=str(path)))
    ids = [d.doc_id for d in docs]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise DuplicateDocId(f"duplicate doc_ids in corpus: {sorted(dupes)}")
    return sorted(docs, key=lambda d: d.doc_id)
