"""Finite frame sequences in R^n and the operators attached to them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidInputError
from .linalg import DEFAULT_TOL, Tolerance, as_matrix, gram_sqrt_pinv, num_rank

__all__ = [
    "FrameSequence",
    "FrameBounds",
    "synthesis",
    "analysis",
    "frame_operator",
    "frame_bounds",
    "canonical_tight",
    "is_riesz",
    "is_tight",
]


@dataclass(frozen=True, eq=False)
class FrameSequence:
    """An ordered list of ``m`` vectors in ``R^n``.

    ``vectors`` is stored row-wise with shape ``(m, n)``; the synthesis matrix
    is its transpose.  Zero vectors are allowed as long as one vector is
    nonzero.
    """

    vectors: NDArray[np.float64]

    def __post_init__(self):
        V = np.asarray(self.vectors, dtype=np.float64)
        if V.ndim == 1:
            V = V[None, :]
        if V.ndim != 2 or V.shape[0] < 1 or V.shape[1] < 1:
            raise InvalidInputError(f"frame vectors must form an (m, n) array, got shape {V.shape}")
        if not np.all(np.isfinite(V)):
            raise InvalidInputError("frame vectors contain non-finite entries")
        if not np.any(V):
            raise InvalidInputError("frame sequence has no nonzero vector")
        V = V.copy()
        V.setflags(write=False)
        object.__setattr__(self, "vectors", V)

    @classmethod
    def from_columns(cls, M: ArrayLike) -> FrameSequence:
        """Build from a synthesis matrix whose columns are the frame vectors."""
        return cls(as_matrix(M).T)

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def __eq__(self, other):
        if not isinstance(other, FrameSequence):
            return NotImplemented
        return np.array_equal(self.vectors, other.vectors)

    __hash__ = None

    def __repr__(self):
        return f"FrameSequence(m={len(self)}, n={self.ambient_dim})"


@dataclass(frozen=True)
class FrameBounds:
    """Optimal lower and upper frame bounds of a frame sequence."""

    lower: float
    upper: float

    def __post_init__(self):
        if not 0 < self.lower <= self.upper * (1 + 1e-12):
            raise InvalidInputError(f"invalid frame bounds ({self.lower}, {self.upper})")


def synthesis(fs: FrameSequence) -> NDArray:
    """``n x m`` matrix whose j-th column is the j-th frame vector."""
    return np.array(fs.vectors.T)


def analysis(fs: FrameSequence) -> NDArray:
    """``m x n`` matrix mapping ``f`` to its inner products with the frame."""
    return np.array(fs.vectors)


def frame_operator(fs: FrameSequence) -> NDArray:
    """``S = U U^T``, the sum of the outer products ``u_j u_j^T``."""
    V = fs.vectors
    return V.T @ V


def frame_bounds(fs: FrameSequence, tol: Tolerance = DEFAULT_TOL) -> FrameBounds:
    """Optimal frame bounds for the span: extreme nonzero eigenvalues of ``S``.

    Taken as squared singular values of the synthesis matrix, which has the
    same nonzero spectrum as ``S`` and ``U^T U``.
    """
    U = synthesis(fs)
    s = np.linalg.svd(U, compute_uv=False)
    r = num_rank(U, tol)
    if r == 0:
        raise InvalidInputError("frame sequence is numerically zero")
    return FrameBounds(lower=float(s[r - 1] ** 2), upper=float(s[0] ** 2))


def canonical_tight(fs: FrameSequence, tol: Tolerance = DEFAULT_TOL) -> FrameSequence:
    """The canonical Parseval frame ``{S^{+1/2} u_j}`` for the same span."""
    U = synthesis(fs)
    root = gram_sqrt_pinv(U, tol, side="left")
    return FrameSequence.from_columns(root @ U)


def is_riesz(fs: FrameSequence, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the frame vectors are linearly independent."""
    return num_rank(synthesis(fs), tol) == len(fs)


def is_tight(fs: FrameSequence, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the optimal frame bounds agree to ``abs_check_tol`` (relative)."""
    b = frame_bounds(fs, tol)
    return b.upper - b.lower <= tol.abs_check_tol * b.upper
