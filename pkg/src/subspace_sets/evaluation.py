"""Experiment orchestration: STS correlation runs and retrieval reports.

Reports are plain TSV so golden-file tests can diff them. Per-pair sentence
scores are written next to a one-row summary report; retrieval reports carry
one row per word set plus a macro row named ``ALL`` whose recalls are
averaged over sets and whose median pools all test-word ranks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import retrieval
from .embeddings import (
    EmbeddingFormat,
    SentenceEmbedding,
    load_token_embeddings,
    load_word_embeddings,
)
from .errors import (
    DegenerateInput,
    InvalidCombination,
    InvalidInput,
    MissingSentence,
    ParseError,
)
from .retrieval import ExpansionMethod, RankedList, ranks_of
from .similarity import (
    ScoreTriple,
    Weighting,
    avg_cos,
    bertscore,
    subspace_bertscore,
    write_pair_scores,
)


class SimilarityMethod(str, enum.Enum):
    SUBSPACE_BERTSCORE = "subspace_bertscore"
    BERTSCORE = "bertscore"
    AVG_COS = "avg_cos"


METRICS = ("P", "R", "F")


@dataclass(frozen=True)
class StsPair:
    pair_id: str
    gold: float
    id_a: str
    id_b: str


@dataclass(frozen=True)
class EvalReport:
    method: str
    weighting: str
    metric: str
    spearman_rho: float
    n_pairs: int


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Fractional ranks: tied values share the average of their positions."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size)
    sorted_values = values[order]
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and sorted_values[j + 1] == sorted_values[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman's rank correlation: Pearson correlation of average ranks."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise InvalidInput("sequences must be 1-D and of equal length")
    if x.size < 2:
        raise InvalidInput("need at least two observations")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InvalidInput("non-finite value")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateInput("constant sequence has no rank correlation")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    return float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))


def parse_sts_pairs(text: str) -> list[StsPair]:
    """Pairs file: TSV ``pair_id<TAB>gold<TAB>id_a<TAB>id_b``, no header."""
    pairs = []
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty pairs file")
    for line_no, line in enumerate(lines, start=1):
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(line_no, f"expected 4 tab-separated fields, found {len(fields)}")
        pair_id, gold_field, id_a, id_b = fields
        try:
            gold = float(gold_field)
        except ValueError:
            raise ParseError(line_no, "malformed gold score") from None
        if not np.isfinite(gold):
            raise ParseError(line_no, "non-finite gold score")
        pairs.append(StsPair(pair_id, gold, id_a, id_b))
    return pairs


def load_sts_pairs(path) -> list[StsPair]:
    return parse_sts_pairs(Path(path).read_text(encoding="utf-8"))


def score_pair(a: SentenceEmbedding, b: SentenceEmbedding,
               method: SimilarityMethod, weighting: Weighting) -> ScoreTriple:
    if method is SimilarityMethod.SUBSPACE_BERTSCORE:
        return subspace_bertscore(a, b, weighting)
    if method is SimilarityMethod.BERTSCORE:
        return bertscore(a, b, weighting)
    if method is SimilarityMethod.AVG_COS:
        # Single undecomposable score, reported in all three slots.
        score = avg_cos(a, b)
        return ScoreTriple(score, score, score)
    raise InvalidInput(f"unknown similarity method: {method!r}")


def run_sts(pairs_path, embeddings_path, method: SimilarityMethod,
            metric: str = "F", weighting: Weighting = Weighting.UNIFORM,
            out_dir=None) -> EvalReport:
    """Score every pair, correlate the chosen metric against gold judgments.

    Writes ``pairs.tsv`` (per-pair P/R/F) and ``report.tsv`` into ``out_dir``
    when given. avg_cos has no P/R decomposition, so only metric F is
    accepted for it.
    """
    if metric not in METRICS:
        raise InvalidCombination(f"metric must be one of {METRICS}, got {metric!r}")
    if method is SimilarityMethod.AVG_COS and metric != "F":
        raise InvalidCombination("avg_cos has no P/R decomposition; use metric F")

    pairs = load_sts_pairs(pairs_path)
    sentences = {s.id: s for s in load_token_embeddings(embeddings_path)}

    rows: list[tuple[str, ScoreTriple]] = []
    for pair in pairs:
        for sid in (pair.id_a, pair.id_b):
            if sid not in sentences:
                raise MissingSentence(sid)
        rows.append(
            (pair.pair_id,
             score_pair(sentences[pair.id_a], sentences[pair.id_b], method, weighting))
        )

    golds = [p.gold for p in pairs]
    scores = [t.metric(metric) for _, t in rows]
    rho = spearman(scores, golds)
    report = EvalReport(method.value, weighting.value, metric, rho, len(pairs))

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_pair_scores(rows, out / "pairs.tsv")
        header = "method\tweighting\tmetric\tspearman_rho\tn_pairs"
        line = (f"{report.method}\t{report.weighting}\t{report.metric}"
                f"\t{report.spearman_rho:.9f}\t{report.n_pairs}")
        (out / "report.tsv").write_text(header + "\n" + line + "\n", encoding="utf-8")
    return report


@dataclass(frozen=True)
class RetrievalRow:
    set_name: str
    method: str
    recalls: tuple[float, ...]
    median: float


def format_retrieval_report(rows: Sequence[RetrievalRow], ks: Sequence[int]) -> str:
    header = "set_name\tmethod\t" + "\t".join(f"R@{k}" for k in ks) + "\tmedian"
    lines = [header]
    for row in rows:
        recalls = "\t".join(f"{r:.9f}" for r in row.recalls)
        lines.append(f"{row.set_name}\t{row.method}\t{recalls}\t{row.median:g}")
    return "\n".join(lines) + "\n"


def run_retrieval(dataset_path, embeddings_path,
                  embedding_format: EmbeddingFormat | str,
                  method: ExpansionMethod, ks: Sequence[int] = (100, 1000),
                  out_dir=None) -> list[RetrievalRow]:
    """Expand every set in the dataset and report R@k and median ranks.

    The final ``ALL`` row macro-averages R@k over sets; its median pools all
    test-word ranks across sets (per-set medians sit in their own rows).
    """
    if not ks or any(k < 1 for k in ks):
        raise InvalidInput("ks must be a nonempty sequence of positive ints")
    table = load_word_embeddings(embeddings_path, embedding_format)
    sets = retrieval.load_word_sets(dataset_path)

    rows: list[RetrievalRow] = []
    pooled_ranks: list[int] = []
    total_oov_span = 0
    total_oov_test = 0
    for spec in sets:
        ranking = retrieval.expand_set(spec, table, method)
        ranks, oov_test = ranks_of(ranking, spec.test_words)
        total_oov_span += ranking.oov_span_count
        total_oov_test += oov_test
        pooled_ranks.extend(ranks)
        recalls = tuple(
            sum(1 for r in ranks if r <= k) / len(ranks) for k in ks
        )
        rows.append(RetrievalRow(spec.name, method.value, recalls,
                                 float(np.median(ranks))))

    macro = RetrievalRow(
        "ALL",
        method.value,
        tuple(float(np.mean([row.recalls[i] for row in rows])) for i in range(len(ks))),
        float(np.median(pooled_ranks)),
    )
    rows.append(macro)

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.tsv").write_text(
            format_retrieval_report(rows, ks), encoding="utf-8"
        )
        meta = (
            f"n_sets\t{len(sets)}\n"
            f"vocabulary\t{len(table)}\n"
            f"oov_span_words\t{total_oov_span}\n"
            f"oov_test_words\t{total_oov_test}\n"
        )
        (out / "meta.tsv").write_text(meta, encoding="utf-8")
    return rows
