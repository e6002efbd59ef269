"""Tolerance-aware dense linear algebra primitives.

Everything here works on real float64 arrays.  Rank decisions use a single
relative singular-value cutoff so that pseudoinverses, projectors and rank
counts agree with each other on the same input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidInputError

__all__ = [
    "Tolerance",
    "as_matrix",
    "pinv",
    "psd_sqrt_pinv",
    "gram_sqrt_pinv",
    "orth_proj",
    "orth_basis",
    "orth_complement",
    "op_norm",
    "num_rank",
    "pseudo_cond",
    "principal_angle_cos_oracle",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerances used throughout the package.

    Parameters
    ----------
    rel_rank_tol : float or None
        Singular values ``s <= rel_rank_tol * s_max`` are treated as zero.
        ``None`` selects ``max(rows, cols) * eps`` for each matrix.
    abs_check_tol : float
        Slack allowed when asserting symmetry and positive semidefiniteness.
    """

    rel_rank_tol: float | None = None
    abs_check_tol: float = 1e-9

    def __post_init__(self):
        if self.rel_rank_tol is not None and not (
            np.isfinite(self.rel_rank_tol) and self.rel_rank_tol > 0
        ):
            raise InvalidInputError(f"rel_rank_tol must be positive, got {self.rel_rank_tol}")
        if not (np.isfinite(self.abs_check_tol) and self.abs_check_tol > 0):
            raise InvalidInputError(f"abs_check_tol must be positive, got {self.abs_check_tol}")

    def relative(self, shape: tuple[int, ...]) -> float:
        if self.rel_rank_tol is not None:
            return self.rel_rank_tol
        return max(shape) * np.finfo(np.float64).eps

    def cutoff(self, shape: tuple[int, ...], s_max: float) -> float:
        """Absolute singular-value threshold for a matrix of ``shape``."""
        return self.relative(shape) * s_max


DEFAULT_TOL = Tolerance()


def as_matrix(M: ArrayLike, name: str = "matrix") -> NDArray[np.float64]:
    """Convert to a finite 2-D float64 array, promoting vectors to columns."""
    try:
        A = np.asarray(M, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name}: not a real numeric array ({exc})") from None
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise InvalidInputError(f"{name}: expected a non-empty 2-D array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError(f"{name}: contains non-finite entries")
    return A


def _svd(A: NDArray, tol: Tolerance):
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    s_max = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > tol.cutoff(A.shape, s_max))) if s_max > 0 else 0
    return U, s, Vt, rank


def pinv(M: ArrayLike, tol: Tolerance = DEFAULT_TOL, *, rank: int | None = None) -> NDArray:
    """Moore-Penrose pseudoinverse via a truncated SVD.

    If ``rank`` is given, exactly the ``rank`` largest singular values are
    inverted instead of applying the relative cutoff.  Callers use this when
    the rank is known from structure and roundoff could blur the gap.
    """
    A = as_matrix(M)
    U, s, Vt, r = _svd(A, tol)
    if rank is not None:
        if not 0 <= rank <= s.size:
            raise InvalidInputError(f"rank {rank} outside [0, {s.size}]")
        r = rank
    return (Vt[:r].T / s[:r]) @ U[:, :r].T


def num_rank(M: ArrayLike, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above the relative cutoff (0 for a zero matrix)."""
    A = as_matrix(M)
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol.cutoff(A.shape, s[0])))


def op_norm(M: ArrayLike) -> float:
    """Spectral norm (largest singular value)."""
    A = as_matrix(M)
    return float(np.linalg.svd(A, compute_uv=False)[0])


def pseudo_cond(M: ArrayLike, tol: Tolerance = DEFAULT_TOL) -> float:
    """Ratio of the largest to the smallest nonzero singular value."""
    A = as_matrix(M)
    s = np.linalg.svd(A, compute_uv=False)
    r = num_rank(A, tol)
    if r == 0:
        raise InvalidInputError("condition number of a zero matrix is undefined")
    return float(s[0] / s[r - 1])


def orth_basis(M: ArrayLike, tol: Tolerance = DEFAULT_TOL) -> NDArray:
    """Orthonormal basis (as columns) of the column space of ``M``."""
    A = as_matrix(M)
    U, _, _, r = _svd(A, tol)
    return U[:, :r]


def orth_complement(M: ArrayLike, tol: Tolerance = DEFAULT_TOL) -> NDArray:
    """Orthonormal basis of the orthogonal complement of the column space of ``M``.

    The result has ``rows - rank`` columns and may be empty.
    """
    A = as_matrix(M)
    U, s, _ = np.linalg.svd(A, full_matrices=True)
    r = 0 if s[0] == 0 else int(np.count_nonzero(s > tol.cutoff(A.shape, s[0])))
    return U[:, r:]


def orth_proj(M: ArrayLike, tol: Tolerance = DEFAULT_TOL) -> NDArray:
    """Orthogonal projector onto the column space of ``M``.

    Equal to ``M @ pinv(M)``; assembled from the orthonormal basis so the
    result is symmetric to machine precision.
    """
    B = orth_basis(M, tol)
    return B @ B.T


def gram_sqrt_pinv(M: ArrayLike, tol: Tolerance = DEFAULT_TOL, side: str = "right") -> NDArray:
    """``(M^T M)^{+1/2}`` (``side="right"``) or ``(M M^T)^{+1/2}`` (``side="left"``).

    Computed from the SVD of ``M`` rather than of the Gram matrix, so the rank
    decision is made on singular values instead of their squares.
    """
    A = as_matrix(M)
    U, s, Vt, r = _svd(A, tol)
    if side == "right":
        V = Vt[:r].T
        return (V / s[:r]) @ V.T
    if side == "left":
        W = U[:, :r]
        return (W / s[:r]) @ W.T
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def psd_sqrt_pinv(M: ArrayLike, tol: Tolerance = DEFAULT_TOL) -> NDArray:
    """Positive square root of the pseudoinverse of a symmetric PSD matrix.

    Parameters
    ----------
    M : array_like, shape (n, n)
        Symmetric positive semidefinite matrix.
    tol : Tolerance
        Eigenvalues ``<= rel_rank_tol * lambda_max`` are dropped.  Negative
        eigenvalues down to ``-abs_check_tol * max(1, |lambda|_max)`` are
        treated as roundoff and clamped to zero.

    Returns
    -------
    X : ndarray, shape (n, n)
        Symmetric PSD with ``X @ X == pinv(M)``.

    Raises
    ------
    InvalidInputError
        If ``M`` is not square, not symmetric, or indefinite beyond tolerance.
    """
    A = as_matrix(M)
    n, m = A.shape
    if n != m:
        raise InvalidInputError(f"expected a square matrix, got shape {A.shape}")
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.T)) > tol.abs_check_tol * scale:
        raise InvalidInputError("matrix is not symmetric within tolerance")
    lam, V = np.linalg.eigh((A + A.T) / 2)
    lam_scale = max(1.0, float(np.max(np.abs(lam))))
    if lam[0] < -tol.abs_check_tol * lam_scale:
        raise InvalidInputError(f"matrix is indefinite (eigenvalue {lam[0]:.3e})")
    lam = np.clip(lam, 0.0, None)
    lam_max = lam[-1]
    if lam_max == 0:
        return np.zeros_like(A)
    keep = lam > tol.cutoff(A.shape, lam_max)
    inv_root = np.zeros_like(lam)
    inv_root[keep] = 1.0 / np.sqrt(lam[keep])
    X = (V * inv_root) @ V.T
    return (X + X.T) / 2


def principal_angle_cos_oracle(
    S_basis: ArrayLike, W_basis: ArrayLike, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Cosine of the subspace angle from ``span(S_basis)`` to ``span(W_basis)``.

    This is ``inf ||P_W s||`` over unit vectors ``s`` in ``S``, i.e. the smallest
    singular value of ``Q_W^T Q_S`` for orthonormal bases ``Q_S``, ``Q_W``.  The
    quantity is not symmetric in its arguments: if ``dim S > dim W`` some unit
    vector of ``S`` is orthogonal to ``W`` and the result is 0.
    """
    S = as_matrix(S_basis, "S_basis")
    W = as_matrix(W_basis, "W_basis")
    if S.shape[0] != W.shape[0]:
        raise InvalidInputError(
            f"bases live in different spaces: {S.shape[0]} vs {W.shape[0]} rows"
        )
    QS = orth_basis(S, tol)
    QW = orth_basis(W, tol)
    if QS.shape[1] == 0 or QW.shape[1] == 0:
        raise InvalidInputError("principal angle with a zero subspace is undefined")
    if QS.shape[1] > QW.shape[1]:
        return 0.0
    s = np.linalg.svd(QW.T @ QS, compute_uv=False)
    return float(np.clip(s[-1], 0.0, 1.0))
