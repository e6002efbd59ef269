"""Reconstruction operators built from measurement frames.

Three maps ``F = Q U^T`` from measurements to the reconstruction space are
provided, all materialized as dense matrices:

``generalized``
    ``Q = G (U^T G)^+``; ``F`` is the oblique projection onto ``G`` along
    ``S(G)^perp`` where ``S`` is the frame operator of ``U``.
``frame_independent``
    ``Q = G (W U^T G)^+ W`` with ``W = (U^T U)^{+1/2}``; ``F`` is the oblique
    projection onto ``G`` along ``P_U(G)^perp``.  It depends only on the spans
    of the two frames.
``consistent``
    The oblique projection onto ``G`` along ``U^perp``; only defined when
    ``dim U == dim G``, where it coincides with the generalized operator.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InfeasibleProblemError, InvalidInputError, UnsupportedError
from .frames import is_riesz
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    gram_sqrt_pinv,
    num_rank,
    orth_proj,
    pinv,
)
from .problem import SamplingProblem, angle_cos

__all__ = [
    "FEASIBLE_COS",
    "Method",
    "ReconstructionOperator",
    "FeasibilityWarning",
    "check_feasible",
    "gs_build",
    "fis_build",
    "consistent_build",
    "build",
    "measure",
    "reconstruct",
    "consistency_residual",
]

log = logging.getLogger(__name__)

#: Problems with ``cos(phi_GU)`` at or below this value are declared infeasible.
FEASIBLE_COS = 1e-10

Method = Literal["generalized", "frame_independent", "consistent"]


class FeasibilityWarning(RuntimeWarning):
    """The angle test and the injectivity test gave different answers."""


@dataclass(frozen=True, eq=False)
class ReconstructionOperator:
    """A built reconstruction map.

    Attributes
    ----------
    method : str
        One of ``"generalized"``, ``"frame_independent"``, ``"consistent"``.
    Q : ndarray, shape (n, m)
        Measurements to signal.
    P : ndarray, shape (n, n)
        Signal to reconstruction, ``Q @ U^T``.
    coeff_map : ndarray, shape (k, m)
        Measurements to the minimal-norm coefficient vector in the G-frame.
    """

    method: str
    Q: NDArray
    P: NDArray
    coeff_map: NDArray

    @property
    def n_measurements(self) -> int:
        return self.Q.shape[1]


def check_feasible(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the oblique projections onto ``G`` exist, i.e. ``cos(phi_GU) > 0``.

    When ``G`` is a Riesz sequence the answer is cross-checked against the
    injectivity of ``U^T G``.  If the two tests disagree the problem sits on
    the numerical boundary; a :class:`FeasibilityWarning` is issued and the
    problem is reported infeasible.
    """
    feasible = angle_cos(p, tol) > FEASIBLE_COS
    if is_riesz(p.G, tol):
        cross = p.synthesis_U.T @ p.synthesis_G
        injective = num_rank(cross, tol) == len(p.G)
        if injective != feasible:
            warnings.warn(
                f"angle test says feasible={feasible} but U^T G injective={injective}; "
                "treating the problem as infeasible",
                FeasibilityWarning,
                stacklevel=2,
            )
            return False
    return feasible


def _require_feasible(p: SamplingProblem, tol: Tolerance) -> int:
    if not check_feasible(p, tol):
        raise InfeasibleProblemError(
            "reconstruction space is numerically orthogonal to part of the sampling "
            "space complement (cos(phi_GU) <= %g)" % FEASIBLE_COS
        )
    # N(U^T G) = N(G) for feasible problems, so the rank of every
    # coefficient system below equals rank(G).
    return num_rank(p.synthesis_G, tol)


def _assemble(method: str, p: SamplingProblem, coeff_map: NDArray) -> ReconstructionOperator:
    Gm = p.synthesis_G
    Q = Gm @ coeff_map
    P = Q @ p.synthesis_U.T
    for a in (Q, P, coeff_map):
        a.setflags(write=False)
    return ReconstructionOperator(method=method, Q=Q, P=P, coeff_map=coeff_map)


def gs_build(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> ReconstructionOperator:
    """Generalized sampling: ``coeff_map = (U^T G)^+``."""
    rank = _require_feasible(p, tol)
    cross = p.synthesis_U.T @ p.synthesis_G
    return _assemble("generalized", p, pinv(cross, tol, rank=rank))


def fis_build(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> ReconstructionOperator:
    """Frame-independent sampling: ``coeff_map = (W U^T G)^+ W``, ``W = (U^T U)^{+1/2}``.

    ``W U^T`` is the analysis operator of the canonical Parseval frame of
    ``U``, so the coefficients solve the least-squares problem in which the
    measurements are first whitened by the frame's own Gram matrix.
    """
    rank = _require_feasible(p, tol)
    Um = p.synthesis_U
    W = gram_sqrt_pinv(Um, tol, side="right")
    weighted = W @ Um.T @ p.synthesis_G
    return _assemble("frame_independent", p, pinv(weighted, tol, rank=rank) @ W)


def consistent_build(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> ReconstructionOperator:
    """Consistent reconstruction, the oblique projection onto ``G`` along ``U^perp``.

    Requires ``dim U == dim G``; in that case it equals generalized sampling,
    which is what gets built.
    """
    dim_u = num_rank(p.synthesis_U, tol)
    dim_g = num_rank(p.synthesis_G, tol)
    if dim_u != dim_g:
        raise UnsupportedError(
            f"consistent reconstruction needs dim U == dim G, got {dim_u} and {dim_g}"
        )
    op = gs_build(p, tol)
    if num_rank(p.synthesis_U.T @ p.synthesis_G, tol) != dim_g:
        raise InfeasibleProblemError("U^T G is not invertible between U and G")
    return ReconstructionOperator("consistent", op.Q, op.P, op.coeff_map)


_BUILDERS = {
    "generalized": gs_build,
    "gs": gs_build,
    "frame_independent": fis_build,
    "fis": fis_build,
    "consistent": consistent_build,
}


def build(method: str, p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> ReconstructionOperator:
    """Dispatch on a method name (long names or the ``gs``/``fis`` aliases)."""
    try:
        builder = _BUILDERS[method]
    except KeyError:
        raise InvalidInputError(f"unknown method {method!r}") from None
    log.debug("building %s operator for n=%d, |U|=%d, |G|=%d",
              method, p.ambient_dim, len(p.U), len(p.G))
    return builder(p, tol)


def _vector(f: ArrayLike, n: int, name: str) -> NDArray:
    v = np.asarray(f, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != n:
        raise InvalidInputError(f"{name} must be a vector of length {n}, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return v


def measure(p: SamplingProblem, f: ArrayLike) -> NDArray:
    """Inner products ``<f, u_j>`` of a signal with every sampling vector."""
    return p.U.vectors @ _vector(f, p.ambient_dim, "signal")


def reconstruct(op: ReconstructionOperator, b: ArrayLike) -> tuple[NDArray, NDArray]:
    """Apply a built operator to measurements.

    Returns the reconstructed signal and its minimal-norm coefficients in the
    reconstruction frame.
    """
    b = _vector(b, op.n_measurements, "measurements")
    coeffs = op.coeff_map @ b
    return op.Q @ b, coeffs


def consistency_residual(
    op: ReconstructionOperator,
    p: SamplingProblem,
    f: ArrayLike,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """``max_k |<P_U (P f - f), g_k>|``.

    Zero for every ``f`` exactly when ``P`` is the frame-independent operator.
    """
    f = _vector(f, p.ambient_dim, "signal")
    PU = orth_proj(p.synthesis_U, tol)
    if as_matrix(op.P).shape != (p.ambient_dim, p.ambient_dim):
        raise InvalidInputError("operator does not match the problem's ambient dimension")
    return float(np.max(np.abs(p.G.vectors @ (PU @ (op.P @ f - f)))))
