"""Sentence-pair similarity scores over precomputed token embeddings.

Both scorers share the recall/precision/F structure: recall averages an
indicator of each left-sentence token against the right sentence, precision
swaps the roles, and F is the harmonic mean. They differ only in the
indicator. ``bertscore`` matches a token to its best counterpart by maximum
cosine similarity; ``subspace_bertscore`` scores a token against the whole
sentence at once, via the cosine of the first canonical angle between the
token and the subspace spanned by the sentence's token vectors.

Averages run over tokens (duplicates are distinct summands); optional
importance weighting replaces the uniform average with weights equal to each
token vector's L2 norm.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algebra import Subspace, span
from .embeddings import SentenceEmbedding
from .errors import DimensionMismatch, InvalidInput


class Weighting(str, enum.Enum):
    UNIFORM = "uniform"
    L2_NORM = "l2_norm"


@dataclass(frozen=True)
class ScoreTriple:
    precision: float
    recall: float
    f: float

    def metric(self, name: str) -> float:
        return {"P": self.precision, "R": self.recall, "F": self.f}[name]


def _harmonic_f(precision: float, recall: float) -> float:
    # F is left at 0 exactly at the P + R == 0 singularity.
    total = precision + recall
    if total == 0.0:
        return 0.0
    return 2.0 * (precision * recall) / total


def _unit_rows(vectors: np.ndarray, what: str) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise InvalidInput(f"{what} contains a zero vector")
    return vectors / norms[:, None]


def _weights(vectors: np.ndarray, weighting: Weighting) -> np.ndarray:
    if weighting is Weighting.L2_NORM:
        return np.linalg.norm(vectors, axis=1)
    return np.ones(vectors.shape[0])


def vector_indicator(a, b_vectors: Sequence) -> float:
    """Maximum cosine similarity between ``a`` and any vector in ``b_vectors``."""
    a = np.asarray(a, dtype=np.float64)
    b = [np.asarray(v, dtype=np.float64) for v in b_vectors]
    if not b:
        raise InvalidInput("b_vectors must be nonempty")
    bm = np.vstack(b)
    if bm.shape[1] != a.shape[0]:
        raise DimensionMismatch(
            f"vector dimension {a.shape[0]} vs {bm.shape[1]}"
        )
    a_norm = np.linalg.norm(a)
    if a_norm == 0.0:
        raise InvalidInput("query vector is zero")
    b_unit = _unit_rows(bm, "b_vectors")
    return float(np.max(b_unit @ (a / a_norm)))


def _check_pair(a: SentenceEmbedding, b: SentenceEmbedding) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"sentence dimensions differ: {a.dim} vs {b.dim}")


def bertscore(a: SentenceEmbedding, b: SentenceEmbedding,
              weighting: Weighting = Weighting.UNIFORM) -> ScoreTriple:
    """Max-cosine token matching, averaged per side."""
    _check_pair(a, b)
    a_unit = _unit_rows(a.vectors, f"sentence {a.id!r}")
    b_unit = _unit_rows(b.vectors, f"sentence {b.id!r}")
    sims = a_unit @ b_unit.T
    wa = _weights(a.vectors, weighting)
    wb = _weights(b.vectors, weighting)
    recall = float(np.dot(wa, sims.max(axis=1)) / wa.sum())
    precision = float(np.dot(wb, sims.max(axis=0)) / wb.sum())
    return ScoreTriple(precision, recall, _harmonic_f(precision, recall))


def _membership_average(tokens: np.ndarray, weights: np.ndarray,
                        target: Subspace) -> float:
    """Weighted mean of soft memberships of ``tokens`` in ``target``.

    Precision and recall both route through here, which makes swapping the
    two sentences swap P and R bitwise.
    """
    unit = _unit_rows(tokens, "sentence")
    memberships = np.linalg.norm(target.basis @ unit.T, axis=0)
    return float(np.dot(weights, memberships) / weights.sum())


def subspace_bertscore(a: SentenceEmbedding, b: SentenceEmbedding,
                       weighting: Weighting = Weighting.UNIFORM) -> ScoreTriple:
    """Token-to-sentence-subspace indicator, averaged per side.

    Each sentence's token vectors span a subspace; a token's indicator
    against the other sentence is its soft membership in that subspace.
    Every component lies in [0, 1] up to rounding.
    """
    _check_pair(a, b)
    span_a = span(list(a.vectors))
    span_b = span(list(b.vectors))
    if span_a.rank == 0 or span_b.rank == 0:
        raise InvalidInput("sentence token vectors are all zero")
    wa = _weights(a.vectors, weighting)
    wb = _weights(b.vectors, weighting)
    recall = _membership_average(a.vectors, wa, span_b)
    precision = _membership_average(b.vectors, wb, span_a)
    return ScoreTriple(precision, recall, _harmonic_f(precision, recall))


def avg_cos(a: SentenceEmbedding, b: SentenceEmbedding) -> float:
    """Cosine similarity of the two sentences' mean token vectors."""
    _check_pair(a, b)
    mean_a = a.vectors.mean(axis=0)
    mean_b = b.vectors.mean(axis=0)
    na, nb = np.linalg.norm(mean_a), np.linalg.norm(mean_b)
    if na == 0.0 or nb == 0.0:
        raise InvalidInput("mean token vector is zero")
    return float(np.dot(mean_a, mean_b) / (na * nb))


def format_pair_scores(rows: Iterable[tuple[str, ScoreTriple]]) -> str:
    """Per-pair TSV: pair_id, P, R, F with 9-digit fixed decimals."""
    lines = [
        f"{pair_id}\t{t.precision:.9f}\t{t.recall:.9f}\t{t.f:.9f}"
        for pair_id, t in rows
    ]
    return "\n".join(lines) + "\n"


def write_pair_scores(rows: Iterable[tuple[str, ScoreTriple]], path) -> None:
    Path(path).write_text(format_pair_scores(rows), encoding="utf-8")
