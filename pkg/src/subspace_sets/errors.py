"""Exception types shared across the package.

The CLI maps these onto stable exit codes: usage problems exit with 2,
data and parse problems with 3, numerical failures with 4.
"""


class SubspaceSetsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(SubspaceSetsError):
    """An argument violates a documented precondition (non-finite entries,
    zero vectors, empty sequences, out-of-range parameters)."""


class DimensionMismatch(SubspaceSetsError):
    """Operands live in different ambient dimensions."""


class NumericalFailure(SubspaceSetsError):
    """A numerical routine (SVD) failed to converge."""


class ParseError(SubspaceSetsError):
    """A file could not be parsed. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class OutOfVocabulary(SubspaceSetsError):
    """Word lookup failed."""

    def __init__(self, word: str):
        super().__init__(f"word not in vocabulary: {word!r}")
        self.word = word


class EmptySpan(SubspaceSetsError):
    """Every span word of a set is out of vocabulary."""


class EmptyTestSet(SubspaceSetsError):
    """No test word of a set is present in the ranking."""


class InsufficientPairs(SubspaceSetsError):
    """Fewer acceptable set pairs exist than the requested count."""


class MissingSentence(SubspaceSetsError):
    """A pairs file references a sentence id absent from the embedding file."""

    def __init__(self, sentence_id: str):
        super().__init__(f"unknown sentence id: {sentence_id!r}")
        self.sentence_id = sentence_id


class InvalidCombination(SubspaceSetsError):
    """The requested method/metric combination is not defined."""


class DegenerateInput(SubspaceSetsError):
    """A statistic is undefined for the given data (e.g. constant sequence)."""
