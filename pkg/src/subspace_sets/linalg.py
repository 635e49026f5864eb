"""Dense linear algebra kernel.

Everything above this module works with row conventions: a matrix of shape
(r, d) holds r vectors of an ambient d-dimensional space, one per row. The
three public operations are rank-revealing orthonormalization, a thin SVD
with a reconstruction guarantee, and orthogonal-projector construction.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput, NumericalFailure

# Singular values sigma_i <= RANK_REL_TOL * sigma_max are treated as zero.
RANK_REL_TOL = 1e-10

# Maximum deviation of B B^T from the identity tolerated before a row basis
# is rejected as non-orthonormal.
ORTHONORMAL_TOL = 1e-8


def as_vector(values) -> np.ndarray:
    """Coerce to a finite float64 1-D array."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise InvalidInput(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInput("vector has non-finite entries")
    return v


def as_matrix(values) -> np.ndarray:
    """Coerce to a finite float64 2-D array; zero rows are permitted."""
    m = np.asarray(values, dtype=np.float64)
    if m.ndim != 2:
        raise InvalidInput(f"expected a 2-D matrix, got shape {m.shape}")
    if m.shape[1] < 1:
        raise InvalidInput("matrix must have at least one column")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix has non-finite entries")
    return m


def thin_svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin singular value decomposition m = U @ diag(s) @ Vt.

    Returns (U, s, Vt) with s sorted descending and non-negative, U having
    orthonormal columns and Vt orthonormal rows.
    """
    m = as_matrix(m)
    if m.shape[0] < 1:
        raise InvalidInput("thin_svd requires at least one row")
    try:
        u, s, vt = np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    return u, s, vt


def orthonormal_rows(m, rel_tol: float = RANK_REL_TOL) -> np.ndarray:
    """Orthonormal row basis of the row space of ``m``.

    The numerical rank r is the number of singular values above
    ``rel_tol * sigma_max``; the returned array has shape (r, d). A zero-row
    or all-zero input yields the (0, d) basis of the trivial subspace.
    """
    m = as_matrix(m)
    if not 0.0 < rel_tol < 1.0:
        raise InvalidInput(f"rel_tol must be in (0, 1), got {rel_tol}")
    d = m.shape[1]
    if m.shape[0] == 0:
        return np.zeros((0, d))
    _, s, vt = thin_svd(m)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, d))
    rank = int(np.count_nonzero(s > rel_tol * s[0]))
    return vt[:rank].copy()


def projector_of(basis) -> np.ndarray:
    """d x d orthogonal projector B^T B onto the row space of ``basis``.

    ``basis`` must have orthonormal rows (as produced by orthonormal_rows);
    a (0, d) basis yields the zero projector.
    """
    b = as_matrix(basis)
    check_orthonormal_rows(b)
    return b.T @ b


def check_orthonormal_rows(b: np.ndarray, tol: float = ORTHONORMAL_TOL) -> None:
    """Raise InvalidInput unless the rows of ``b`` are orthonormal."""
    r = b.shape[0]
    if r == 0:
        return
    gram = b @ b.T
    dev = np.max(np.abs(gram - np.eye(r)))
    if dev > tol:
        raise InvalidInput(f"rows are not orthonormal (max Gram deviation {dev:.3e})")
