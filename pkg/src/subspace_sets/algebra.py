"""Word sets as linear subspaces, with quantum-logic set operations.

A set of embedding vectors is represented by the subspace they span, stored
as an orthonormal row basis. Union is the sum space, complement is the
orthogonal complement, and intersection keeps the canonical directions whose
canonical-angle cosine is within ``alpha`` of one. Membership comes in a hard
(binary, projection-residual) and a soft form; the soft form is the cosine of
the first canonical angle between the vector and the subspace, i.e. the
single singular value of ``basis @ v_hat``.

Two subspaces are considered equal when their orthogonal projectors agree,
which is independent of basis order and sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidInput, ParseError
from .linalg import (
    RANK_REL_TOL,
    as_matrix,
    as_vector,
    check_orthonormal_rows,
    orthonormal_rows,
    projector_of,
    thin_svd,
)

DEFAULT_ALPHA = 1e-6


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^d stored as an orthonormal (rank x d) row basis."""

    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = as_matrix(self.basis)
        check_orthonormal_rows(b)
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def projector(self) -> np.ndarray:
        return projector_of(self.basis)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def _check_same_dim(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


def span(vectors: Iterable, dim: int | None = None,
         rel_tol: float = RANK_REL_TOL) -> Subspace:
    """Subspace spanned by a collection of vectors.

    An empty collection (or an all-zero one) yields the rank-0 subspace;
    ``dim`` is required when the collection is empty because the ambient
    dimension cannot be inferred.
    """
    rows = [as_vector(v) for v in vectors]
    if not rows:
        if dim is None:
            raise InvalidInput("span of an empty collection needs an explicit dim")
        if dim < 1:
            raise InvalidInput(f"ambient dim must be >= 1, got {dim}")
        return Subspace(np.zeros((0, dim)))
    d = rows[0].shape[0]
    for v in rows[1:]:
        if v.shape[0] != d:
            raise DimensionMismatch(
                f"mixed vector dimensions: {d} vs {v.shape[0]}"
            )
    if dim is not None and dim != d:
        raise DimensionMismatch(f"dim={dim} but vectors have dimension {d}")
    return Subspace(orthonormal_rows(np.vstack(rows), rel_tol))


def union(a: Subspace, b: Subspace) -> Subspace:
    """Sum space of two subspaces (the quantum-logic set union)."""
    _check_same_dim(a, b)
    stacked = np.vstack([a.basis, b.basis])
    return Subspace(orthonormal_rows(stacked))


def intersection(a: Subspace, b: Subspace, alpha: float = DEFAULT_ALPHA) -> Subspace:
    """Intersection of two subspaces via canonical angles.

    The singular values of ``A B^T`` (both bases orthonormal) are the cosines
    of the canonical angles; directions whose cosine is within ``alpha`` of
    one are shared by both subspaces. Each retained left singular vector u_i
    is mapped back to ambient space as ``u_i^T A`` and the collected
    directions are re-orthonormalized.
    """
    _check_same_dim(a, b)
    if not 0.0 <= alpha < 0.5:
        raise InvalidInput(f"alpha must be in [0, 0.5), got {alpha}")
    if a.rank > b.rank:
        a, b = b, a
    d = a.ambient_dim
    if a.rank == 0:
        return Subspace(np.zeros((0, d)))
    u, s, _ = thin_svd(a.basis @ b.basis.T)
    shared = np.abs(s - 1.0) <= alpha
    if not np.any(shared):
        return Subspace(np.zeros((0, d)))
    directions = u[:, shared].T @ a.basis
    return Subspace(orthonormal_rows(directions))


def complement(a: Subspace) -> Subspace:
    """Orthogonal complement (the quantum-logic set complement)."""
    d = a.ambient_dim
    if a.rank == 0:
        return Subspace(np.eye(d))
    _, _, vt = np.linalg.svd(a.basis, full_matrices=True)
    return Subspace(vt[a.rank:].copy())


def soft_membership(v, a: Subspace) -> float:
    """Cosine of the first canonical angle between ``v`` and the subspace.

    Equals the single singular value of ``basis @ v_hat``, so it lies in
    [0, 1] up to rounding; a rank-0 subspace yields exactly 0.
    """
    v = as_vector(v)
    if v.shape[0] != a.ambient_dim:
        raise DimensionMismatch(
            f"vector dimension {v.shape[0]} vs ambient {a.ambient_dim}"
        )
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise InvalidInput("membership of the zero vector is undefined")
    if a.rank == 0:
        return 0.0
    return float(np.linalg.norm(a.basis @ (v / norm)))


def hard_membership(v, a: Subspace, tol: float = 1e-6) -> bool:
    """Binary membership: true iff the normalized projection residual is <= tol.

    Kept for law checking; the soft indicator is the useful quantity on
    real embeddings.
    """
    if not 0.0 < tol < 1.0:
        raise InvalidInput(f"tol must be in (0, 1), got {tol}")
    v = as_vector(v)
    if v.shape[0] != a.ambient_dim:
        raise DimensionMismatch(
            f"vector dimension {v.shape[0]} vs ambient {a.ambient_dim}"
        )
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise InvalidInput("membership of the zero vector is undefined")
    v_hat = v / norm
    residual = v_hat - (a.basis.T @ (a.basis @ v_hat) if a.rank else np.zeros_like(v_hat))
    return float(np.linalg.norm(residual)) <= tol


def subspace_equal(a: Subspace, b: Subspace, tol: float = 1e-8) -> bool:
    """True iff the projectors match within Frobenius tolerance ``tol``."""
    _check_same_dim(a, b)
    return float(np.linalg.norm(a.projector() - b.projector())) <= tol


# ---------------------------------------------------------------------------
# Plain-text serialization
#
# Subspace file: line 1 is "subspace <ambient_dim> <rank>", followed by
# <rank> lines of <ambient_dim> space-separated floats (17 significant
# digits, which round-trips float64 exactly).
# Vector file: one vector per line, space-separated floats.
# ---------------------------------------------------------------------------


def _format_floats(values: np.ndarray) -> str:
    return " ".join(f"{x:.17g}" for x in values)


def format_subspace(a: Subspace) -> str:
    lines = [f"subspace {a.ambient_dim} {a.rank}"]
    lines.extend(_format_floats(row) for row in a.basis)
    return "\n".join(lines) + "\n"


def parse_subspace(text: str) -> Subspace:
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty subspace file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "subspace":
        raise ParseError(1, "expected header 'subspace <ambient_dim> <rank>'")
    try:
        dim, rank = int(header[1]), int(header[2])
    except ValueError:
        raise ParseError(1, "ambient_dim and rank must be integers") from None
    if dim < 1 or rank < 0:
        raise ParseError(1, f"invalid dimensions: dim={dim}, rank={rank}")
    if len(lines) != 1 + rank:
        raise ParseError(len(lines), f"expected {rank} basis rows, found {len(lines) - 1}")
    rows = np.zeros((rank, dim))
    for i, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != dim:
            raise ParseError(i, f"expected {dim} values, found {len(fields)}")
        try:
            rows[i - 2] = [float(f) for f in fields]
        except ValueError:
            raise ParseError(i, "malformed float") from None
    return Subspace(rows)


def write_subspace(a: Subspace, path) -> None:
    Path(path).write_text(format_subspace(a), encoding="utf-8")


def read_subspace(path) -> Subspace:
    return parse_subspace(Path(path).read_text(encoding="utf-8"))


def parse_vectors(text: str) -> list[np.ndarray]:
    """Parse a vector file: one space-separated float vector per line."""
    vectors = []
    dim = None
    for i, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields:
            raise ParseError(i, "blank line")
        try:
            v = np.array([float(f) for f in fields])
        except ValueError:
            raise ParseError(i, "malformed float") from None
        if not np.all(np.isfinite(v)):
            raise ParseError(i, "non-finite value")
        if dim is None:
            dim = v.size
        elif v.size != dim:
            raise ParseError(i, f"expected {dim} values, found {v.size}")
        vectors.append(v)
    if not vectors:
        raise ParseError(1, "empty vector file")
    return vectors


def read_vectors(path) -> list[np.ndarray]:
    return parse_vectors(Path(path).read_text(encoding="utf-8"))
