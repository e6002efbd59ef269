"""Sampling problems: a sampling frame and a reconstruction frame in one space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidInputError, NumericalError
from .frames import FrameSequence, is_riesz, synthesis
from .linalg import DEFAULT_TOL, Tolerance, gram_sqrt_pinv, orth_proj, principal_angle_cos_oracle

__all__ = ["SamplingProblem", "angle_cos"]


@dataclass(frozen=True, eq=True)
class SamplingProblem:
    """Frames ``U`` (sampling) and ``G`` (reconstruction) in a common ``R^n``."""

    U: FrameSequence
    G: FrameSequence

    def __post_init__(self):
        if self.U.ambient_dim != self.G.ambient_dim:
            raise InvalidInputError(
                f"ambient dimensions differ: U is in R^{self.U.ambient_dim}, "
                f"G is in R^{self.G.ambient_dim}"
            )

    @classmethod
    def from_vectors(cls, sampling: ArrayLike, reconstruction: ArrayLike) -> SamplingProblem:
        """Build from row-listed sampling and reconstruction vectors."""
        return cls(FrameSequence(np.asarray(sampling, float)),
                   FrameSequence(np.asarray(reconstruction, float)))

    @property
    def ambient_dim(self) -> int:
        return self.U.ambient_dim

    @property
    def synthesis_U(self) -> NDArray:
        return synthesis(self.U)

    @property
    def synthesis_G(self) -> NDArray:
        return synthesis(self.G)


def angle_cos(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> float:
    """Cosine of the subspace angle between ``G`` and ``U``.

    For a Riesz reconstruction frame ``cos^2`` is the smallest eigenvalue of
    ``(G^T G)^{-1/2} G^T P_U G (G^T G)^{-1/2} = B^T B`` with
    ``B = P_U G (G^T G)^{-1/2}``.  It is evaluated as the smallest singular
    value of ``B``, which keeps full accuracy near zero where the square root
    of an eigenvalue would not.  The principal-angle oracle is run alongside
    as a cross-check.  For redundant reconstruction frames only the oracle
    applies.
    """
    Gm = p.synthesis_G
    oracle = principal_angle_cos_oracle(Gm, p.synthesis_U, tol)
    if not is_riesz(p.G, tol):
        return oracle
    B = orth_proj(p.synthesis_U, tol) @ Gm @ gram_sqrt_pinv(Gm, tol, side="right")
    value = float(np.clip(np.linalg.svd(B, compute_uv=False)[-1], 0.0, 1.0))
    if abs(value - oracle) > 1e-8:
        raise NumericalError(
            f"eigenvalue ({value!r}) and principal-angle ({oracle!r}) routes disagree"
        )
    return value
