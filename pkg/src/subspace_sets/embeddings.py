"""Loaders for static word-embedding tables and precomputed token embeddings.

Two static-embedding text formats are supported:

* ``word2vec_text``: first line ``<vocab_size> <dim>``, then one
  ``<word> <f1> ... <fd>`` line per word.
* ``glove_text``: no header; the dimension is inferred from the first line.

Contextual token embeddings are consumed from a line-delimited file, one
sentence per line::

    id<TAB>token1 token2 ...<TAB>dim<TAB>f1 f2 ... f_{n*dim}

with the floats in row-major token order. The package never runs an
embedding model; these files are produced externally and treated as ground
truth.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput, OutOfVocabulary, ParseError


class EmbeddingFormat(str, enum.Enum):
    WORD2VEC_TEXT = "word2vec_text"
    GLOVE_TEXT = "glove_text"


class EmbeddingTable:
    """Ordered word -> vector map with a dense matrix view.

    Insertion (file) order is preserved and used as the deterministic
    tie-break in rankings. Lookups are case-sensitive; duplicate words in the
    source file keep the first vector, with the number of dropped duplicates
    recorded in ``duplicate_count``.
    """

    def __init__(self, words: Sequence[str], matrix: np.ndarray,
                 source_format: EmbeddingFormat, duplicate_count: int = 0):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != len(words):
            raise InvalidInput("matrix shape does not match word count")
        if not np.all(np.isfinite(matrix)):
            raise InvalidInput("embedding matrix has non-finite entries")
        if len(set(words)) != len(words):
            raise InvalidInput("duplicate words in table")
        matrix.flags.writeable = False
        self.words: tuple[str, ...] = tuple(words)
        self.matrix = matrix
        self.source_format = source_format
        self.duplicate_count = duplicate_count
        self._index = {w: i for i, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def lookup(self, word: str) -> np.ndarray:
        try:
            return self.matrix[self._index[word]]
        except KeyError:
            raise OutOfVocabulary(word) from None

    def index_of(self, word: str) -> int:
        try:
            return self._index[word]
        except KeyError:
            raise OutOfVocabulary(word) from None


@dataclass(frozen=True)
class SentenceEmbedding:
    """Ordered tokens of one sentence with one contextual vector per token."""

    id: str
    tokens: tuple[str, ...]
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != len(self.tokens) or len(self.tokens) < 1:
            raise InvalidInput(
                f"sentence {self.id!r}: token/vector shapes inconsistent"
            )
        if not np.all(np.isfinite(v)):
            raise InvalidInput(f"sentence {self.id!r}: non-finite vector entries")
        v.flags.writeable = False
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def _parse_embedding_line(line: str, line_no: int, dim: int) -> tuple[str, np.ndarray]:
    fields = line.split()
    if not fields:
        raise ParseError(line_no, "blank line")
    word = fields[0]
    if len(fields) - 1 != dim:
        raise ParseError(line_no, f"expected {dim} values, found {len(fields) - 1}")
    try:
        vec = np.array([float(f) for f in fields[1:]])
    except ValueError:
        raise ParseError(line_no, "malformed float") from None
    if not np.all(np.isfinite(vec)):
        raise ParseError(line_no, "non-finite value")
    return word, vec


def parse_word_embeddings(text: str, fmt: EmbeddingFormat) -> EmbeddingTable:
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty embedding file")

    if fmt is EmbeddingFormat.WORD2VEC_TEXT:
        header = lines[0].split()
        if len(header) != 2:
            raise ParseError(1, "expected header '<vocab_size> <dim>'")
        try:
            _, dim = int(header[0]), int(header[1])
        except ValueError:
            raise ParseError(1, "header fields must be integers") from None
        if dim < 1:
            raise ParseError(1, f"dimension must be positive, got {dim}")
        body = lines[1:]
        first_line_no = 2
        if not body:
            raise ParseError(1, "no embedding rows after header")
    elif fmt is EmbeddingFormat.GLOVE_TEXT:
        dim = len(lines[0].split()) - 1
        if dim < 1:
            raise ParseError(1, "cannot infer dimension from first line")
        body = lines
        first_line_no = 1
    else:
        raise InvalidInput(f"unknown embedding format: {fmt!r}")

    words: list[str] = []
    rows: list[np.ndarray] = []
    seen: set[str] = set()
    duplicates = 0
    for offset, line in enumerate(body):
        word, vec = _parse_embedding_line(line, first_line_no + offset, dim)
        if word in seen:
            duplicates += 1
            continue
        seen.add(word)
        words.append(word)
        rows.append(vec)
    return EmbeddingTable(words, np.vstack(rows), fmt, duplicates)


def load_word_embeddings(path, fmt: EmbeddingFormat | str) -> EmbeddingTable:
    if isinstance(fmt, str):
        fmt = EmbeddingFormat(fmt)
    return parse_word_embeddings(Path(path).read_text(encoding="utf-8"), fmt)


def format_word_embeddings(table: EmbeddingTable) -> str:
    """Serialize back to the table's source format (17 significant digits)."""
    lines = []
    if table.source_format is EmbeddingFormat.WORD2VEC_TEXT:
        lines.append(f"{len(table)} {table.dim}")
    for word, row in zip(table.words, table.matrix):
        lines.append(word + " " + " ".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def save_word_embeddings(table: EmbeddingTable, path) -> None:
    Path(path).write_text(format_word_embeddings(table), encoding="utf-8")


def parse_token_embeddings(text: str) -> list[SentenceEmbedding]:
    """Parse a token-embedding file into sentences, in file order.

    Every record must declare the same vector dimension; ids must be unique;
    zero-norm token vectors are rejected here rather than silently skipped
    downstream.
    """
    sentences: list[SentenceEmbedding] = []
    seen_ids: set[str] = set()
    file_dim: int | None = None
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty token-embedding file")
    for line_no, line in enumerate(lines, start=1):
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(line_no, f"expected 4 tab-separated fields, found {len(fields)}")
        sid, token_field, dim_field, float_field = fields
        if sid in seen_ids:
            raise ParseError(line_no, f"duplicate sentence id {sid!r}")
        tokens = token_field.split()
        if not tokens:
            raise ParseError(line_no, "empty token list")
        try:
            dim = int(dim_field)
        except ValueError:
            raise ParseError(line_no, "dimension field must be an integer") from None
        if dim < 1:
            raise ParseError(line_no, f"dimension must be positive, got {dim}")
        if file_dim is None:
            file_dim = dim
        elif dim != file_dim:
            raise ParseError(line_no, f"dimension {dim} differs from file dimension {file_dim}")
        try:
            flat = np.array([float(f) for f in float_field.split()])
        except ValueError:
            raise ParseError(line_no, "malformed float") from None
        if flat.size != len(tokens) * dim:
            raise ParseError(
                line_no,
                f"expected {len(tokens) * dim} floats for {len(tokens)} tokens, found {flat.size}",
            )
        if not np.all(np.isfinite(flat)):
            raise ParseError(line_no, "non-finite value")
        vectors = flat.reshape(len(tokens), dim)
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(norms == 0.0):
            raise ParseError(line_no, "zero-norm token vector")
        seen_ids.add(sid)
        sentences.append(SentenceEmbedding(sid, tuple(tokens), vectors))
    return sentences


def load_token_embeddings(path) -> list[SentenceEmbedding]:
    return parse_token_embeddings(Path(path).read_text(encoding="utf-8"))


def format_token_embeddings(sentences: Iterable[SentenceEmbedding]) -> str:
    lines = []
    for s in sentences:
        flat = " ".join(f"{x:.17g}" for x in s.vectors.ravel())
        lines.append(f"{s.id}\t{' '.join(s.tokens)}\t{s.dim}\t{flat}")
    return "\n".join(lines) + "\n"


def save_token_embeddings(sentences: Iterable[SentenceEmbedding], path) -> None:
    Path(path).write_text(format_token_embeddings(sentences), encoding="utf-8")
