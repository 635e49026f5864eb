"""Set expansion: rank a vocabulary against a seed word set.

A word set is split into span words (used to build the set representation)
and held-out test words. Three scoring methods rank every vocabulary word
that is not a span word:

* ``subspace``: soft membership of the word vector in the span of the
  span-word vectors;
* ``fuzzy``: cosine against the elementwise maximum of the span vectors;
* ``near``: maximum cosine against any single span vector (reconstructed
  nearest-neighbor baseline).

Rankings are deterministic: ties keep embedding-table insertion order.
Derived union/intersection evaluation sets are generated symbolically from
pairs of existing sets with a seeded RNG.
"""

from __future__ import annotations

import enum
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .algebra import span
from .embeddings import EmbeddingTable
from .errors import (
    EmptySpan,
    EmptyTestSet,
    InsufficientPairs,
    InvalidInput,
    ParseError,
)


class ExpansionMethod(str, enum.Enum):
    SUBSPACE = "subspace"
    FUZZY = "fuzzy"
    NEAR = "near"


class SetOp(str, enum.Enum):
    UNION = "union"
    INTERSECT = "intersect"


@dataclass(frozen=True)
class WordSetSpec:
    """A named word set split into span (seed) words and held-out test words."""

    name: str
    span_words: tuple[str, ...]
    test_words: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "span_words", tuple(self.span_words))
        object.__setattr__(self, "test_words", tuple(self.test_words))
        if not self.span_words:
            raise InvalidInput(f"set {self.name!r}: span_words is empty")
        if len(set(self.span_words)) != len(self.span_words):
            raise InvalidInput(f"set {self.name!r}: duplicate span words")
        if len(set(self.test_words)) != len(self.test_words):
            raise InvalidInput(f"set {self.name!r}: duplicate test words")
        if set(self.span_words) & set(self.test_words):
            raise InvalidInput(f"set {self.name!r}: span and test words overlap")


@dataclass(frozen=True)
class RankedList:
    """Vocabulary ranking, scores non-increasing, span words excluded."""

    entries: tuple[tuple[str, float], ...]
    oov_span_count: int = 0
    _rank_index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(
            self, "_rank_index",
            {word: pos for pos, (word, _) in enumerate(self.entries, start=1)},
        )

    def rank_of(self, word: str) -> int | None:
        """1-based rank of ``word``, or None if absent."""
        return self._rank_index.get(word)

    def __len__(self) -> int:
        return len(self.entries)


def _unit_rows_or_zero(matrix: np.ndarray) -> np.ndarray:
    # Zero-norm rows stay zero and therefore score 0 against anything.
    norms = np.linalg.norm(matrix, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    return matrix / safe[:, None]


def expand_set(spec: WordSetSpec, table: EmbeddingTable,
               method: ExpansionMethod) -> RankedList:
    """Score and rank every vocabulary word outside the span against the set.

    Span words missing from the vocabulary are skipped and counted in the
    result's ``oov_span_count``; if none remain, EmptySpan is raised.
    """
    span_vectors = [table.lookup(w) for w in spec.span_words if w in table]
    oov_span = len(spec.span_words) - len(span_vectors)
    if not span_vectors:
        raise EmptySpan(f"set {spec.name!r}: no span word in vocabulary")

    excluded = set(spec.span_words)
    candidate_idx = np.array(
        [i for i, w in enumerate(table.words) if w not in excluded], dtype=np.intp
    )
    candidates = _unit_rows_or_zero(table.matrix[candidate_idx])

    if method is ExpansionMethod.SUBSPACE:
        basis = span(span_vectors).basis
        scores = np.linalg.norm(candidates @ basis.T, axis=1)
    elif method is ExpansionMethod.FUZZY:
        pooled = np.max(np.vstack(span_vectors), axis=0)
        norm = np.linalg.norm(pooled)
        scores = candidates @ (pooled / norm) if norm > 0.0 else np.zeros(len(candidates))
    elif method is ExpansionMethod.NEAR:
        span_unit = _unit_rows_or_zero(np.vstack(span_vectors))
        scores = (candidates @ span_unit.T).max(axis=1)
    else:
        raise InvalidInput(f"unknown expansion method: {method!r}")

    # Stable sort on negated scores: descending, ties in table order.
    order = np.argsort(-scores, kind="stable")
    entries = tuple(
        (table.words[candidate_idx[i]], float(scores[i])) for i in order
    )
    return RankedList(entries, oov_span)


def ranks_of(ranking: RankedList, test_words: Sequence[str]) -> tuple[list[int], int]:
    """1-based ranks of the in-vocabulary test words, plus the OOV count."""
    if not test_words:
        raise InvalidInput("test_words must be nonempty")
    ranks = []
    oov = 0
    for w in test_words:
        r = ranking.rank_of(w)
        if r is None:
            oov += 1
        else:
            ranks.append(r)
    if not ranks:
        raise EmptyTestSet("no test word present in the ranking")
    return ranks, oov


def recall_at_k(ranking: RankedList, test_words: Sequence[str], k: int) -> float:
    """Fraction of in-vocabulary test words ranked in the top k."""
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    ranks, _ = ranks_of(ranking, test_words)
    return sum(1 for r in ranks if r <= k) / len(ranks)


def median_rank(ranking: RankedList, test_words: Sequence[str]) -> float:
    """Median 1-based rank of the in-vocabulary test words."""
    ranks, _ = ranks_of(ranking, test_words)
    return float(statistics.median(ranks))


def gen_derived_sets(sets: Sequence[WordSetSpec], op: SetOp, seed: int,
                     count: int, union_cap: int = 50,
                     intersect_min: int = 10) -> list[WordSetSpec]:
    """Build evaluation sets by applying a symbolic set operation to pairs.

    Unordered pairs of distinct input sets are visited in seeded random
    order. For each pair the full word lists (span plus test) are combined:
    unions larger than ``union_cap`` are downsampled to ``union_cap`` words
    uniformly without replacement, intersections smaller than
    ``intersect_min`` are rejected, and empty results are always rejected.
    Each accepted word list is shuffled and re-split into 5 span words and
    the remaining test words, so lists too small to leave any test words are
    rejected as well. Generation stops after ``count`` accepted sets.
    """
    if len(sets) < 2:
        raise InvalidInput("need at least two input sets")
    if count < 1:
        raise InvalidInput(f"count must be >= 1, got {count}")
    rng = random.Random(seed)
    pairs = [
        (i, j) for i in range(len(sets)) for j in range(i + 1, len(sets))
    ]
    rng.shuffle(pairs)

    derived: list[WordSetSpec] = []
    for i, j in pairs:
        if len(derived) == count:
            break
        first, second = sets[i], sets[j]
        words_a = list(first.span_words) + list(first.test_words)
        words_b = list(second.span_words) + list(second.test_words)
        if op is SetOp.UNION:
            seen = set(words_a)
            merged = words_a + [w for w in words_b if w not in seen]
        elif op is SetOp.INTERSECT:
            in_b = set(words_b)
            merged = [w for w in words_a if w in in_b]
            if len(merged) < intersect_min:
                continue
        else:
            raise InvalidInput(f"unknown set operation: {op!r}")
        if not merged:
            continue
        shuffled = merged[:]
        rng.shuffle(shuffled)
        if op is SetOp.UNION and len(shuffled) > union_cap:
            shuffled = shuffled[:union_cap]
        if len(shuffled) < 6:
            # 5 span words plus at least one test word
            continue
        derived.append(
            WordSetSpec(
                name=f"{op.value}({first.name},{second.name})",
                span_words=tuple(shuffled[:5]),
                test_words=tuple(shuffled[5:]),
            )
        )
    if len(derived) < count:
        raise InsufficientPairs(
            f"only {len(derived)} acceptable pairs, need {count}"
        )
    return derived


# ---------------------------------------------------------------------------
# Set-dataset file: blank-line separated records of
#   set <name>
#   span w1 w2 ...
#   test w1 w2 ...
# ---------------------------------------------------------------------------


def parse_word_sets(text: str) -> list[WordSetSpec]:
    sets: list[WordSetSpec] = []
    record: dict[str, tuple[str, ...]] = {}
    record_line = 0

    def close_record(line_no: int) -> None:
        nonlocal record
        if not record:
            return
        for key in ("set", "span", "test"):
            if key not in record:
                raise ParseError(line_no, f"record is missing a '{key}' line")
        try:
            sets.append(
                WordSetSpec(record["set"][0], record["span"], record["test"])
            )
        except InvalidInput as exc:
            raise ParseError(record_line, str(exc)) from None
        record = {}

    lines = text.splitlines()
    for line_no, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            close_record(line_no)
            continue
        fields = stripped.split()
        keyword, rest = fields[0], fields[1:]
        if keyword == "set":
            if record:
                raise ParseError(line_no, "unexpected 'set' inside a record")
            if len(rest) != 1:
                raise ParseError(line_no, "expected 'set <name>'")
            record = {"set": (rest[0],)}
            record_line = line_no
        elif keyword in ("span", "test"):
            if not record:
                raise ParseError(line_no, f"'{keyword}' before 'set'")
            if keyword in record:
                raise ParseError(line_no, f"duplicate '{keyword}' line")
            record[keyword] = tuple(rest)
        else:
            raise ParseError(line_no, f"unknown keyword {keyword!r}")
    close_record(len(lines) + 1)
    if not sets:
        raise ParseError(1, "no word sets in file")
    return sets


def load_word_sets(path) -> list[WordSetSpec]:
    return parse_word_sets(Path(path).read_text(encoding="utf-8"))


def format_word_sets(sets: Iterable[WordSetSpec]) -> str:
    blocks = [
        f"set {s.name}\nspan {' '.join(s.span_words)}\ntest {' '.join(s.test_words)}\n"
        for s in sets
    ]
    return "\n".join(blocks)


def save_word_sets(sets: Iterable[WordSetSpec], path) -> None:
    Path(path).write_text(format_word_sets(sets), encoding="utf-8")
