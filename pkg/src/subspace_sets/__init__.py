"""Word sets as linear subspaces of an embedding space.

The package represents a set of embedding vectors by the subspace they span
and provides quantum-logic set operations (union, intersection, complement,
soft and hard membership) together with two downstream engines: subspace
sentence similarity and subspace set expansion, each with an evaluation
harness and a CLI.
"""

from .algebra import (
    Subspace,
    complement,
    hard_membership,
    intersection,
    soft_membership,
    span,
    subspace_equal,
    union,
)
from .embeddings import (
    EmbeddingFormat,
    EmbeddingTable,
    SentenceEmbedding,
    load_token_embeddings,
    load_word_embeddings,
)
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EmptySpan,
    EmptyTestSet,
    InsufficientPairs,
    InvalidCombination,
    InvalidInput,
    MissingSentence,
    NumericalFailure,
    OutOfVocabulary,
    ParseError,
    SubspaceSetsError,
)
from .evaluation import EvalReport, SimilarityMethod, run_retrieval, run_sts, spearman
from .linalg import orthonormal_rows, projector_of, thin_svd
from .retrieval import (
    ExpansionMethod,
    RankedList,
    SetOp,
    WordSetSpec,
    expand_set,
    gen_derived_sets,
    median_rank,
    recall_at_k,
)
from .similarity import (
    ScoreTriple,
    Weighting,
    avg_cos,
    bertscore,
    subspace_bertscore,
    vector_indicator,
)

__version__ = "0.1.0"

__all__ = [
    "Subspace",
    "span",
    "union",
    "intersection",
    "complement",
    "soft_membership",
    "hard_membership",
    "subspace_equal",
    "orthonormal_rows",
    "thin_svd",
    "projector_of",
    "EmbeddingFormat",
    "EmbeddingTable",
    "SentenceEmbedding",
    "load_word_embeddings",
    "load_token_embeddings",
    "ScoreTriple",
    "Weighting",
    "vector_indicator",
    "bertscore",
    "subspace_bertscore",
    "avg_cos",
    "WordSetSpec",
    "RankedList",
    "ExpansionMethod",
    "SetOp",
    "expand_set",
    "recall_at_k",
    "median_rank",
    "gen_derived_sets",
    "spearman",
    "SimilarityMethod",
    "EvalReport",
    "run_sts",
    "run_retrieval",
    "SubspaceSetsError",
    "InvalidInput",
    "DimensionMismatch",
    "NumericalFailure",
    "ParseError",
    "OutOfVocabulary",
    "EmptySpan",
    "EmptyTestSet",
    "InsufficientPairs",
    "MissingSentence",
    "InvalidCombination",
    "DegenerateInput",
    "__version__",
]
