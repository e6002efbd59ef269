"""Stability and quasi-optimality quantities for built reconstruction operators.

``mu`` is the quasi-optimality constant (smallest ``mu`` with
``||f - F f|| <= mu ||f - P_G f||``) and ``eta`` the stability constant
(norm of ``Q`` on attainable measurements).  For both oblique projections
built in :mod:`oblique_sampling.projections`, ``mu = ||P||`` and
``eta = ||Q||``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import (
    InfeasibleProblemError,
    InvalidInputError,
    InvalidOperatorError,
    NumericalError,
)
from .frames import FrameBounds, frame_bounds, is_tight
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    gram_sqrt_pinv,
    num_rank,
    op_norm,
    orth_basis,
    orth_proj,
    pseudo_cond,
)
from .problem import SamplingProblem, angle_cos
from .projections import (
    ReconstructionOperator,
    check_feasible,
    fis_build,
    gs_build,
)

__all__ = [
    "angle_cos",
    "eta_of",
    "mu_of",
    "kappa_of",
    "condition_sandwich_violations",
    "error_bound",
    "sharpness_witness",
    "DiagnosticsReport",
    "full_report",
]

# Slack for the inequality checks recorded in a report.
CHECK_SLACK = 1e-8


def eta_of(op: ReconstructionOperator) -> float:
    """Stability constant: spectral norm of the measurement-to-signal map."""
    return op_norm(op.Q)


def mu_of(op: ReconstructionOperator, p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> float:
    """Quasi-optimality constant of an oblique projection onto ``G``.

    The operator must be idempotent with range ``span(G)``; for such a
    projection the sharp constant is its spectral norm.
    """
    P = op.P
    scale = max(1.0, op_norm(P))
    slack = 1e-6 * scale**2
    if np.max(np.abs(P @ P - P)) > slack:
        raise InvalidOperatorError("operator is not idempotent")
    Gm = p.synthesis_G
    if np.max(np.abs(P @ Gm - Gm)) > slack * max(1.0, op_norm(Gm)):
        raise InvalidOperatorError("operator does not fix the reconstruction space")
    leak = (np.eye(P.shape[0]) - orth_proj(Gm, tol)) @ P
    if np.max(np.abs(leak)) > slack:
        raise InvalidOperatorError("operator range leaves the reconstruction space")
    return op_norm(P)


def _weighted_cross(p: SamplingProblem, tol: Tolerance) -> NDArray:
    Um = p.synthesis_U
    return gram_sqrt_pinv(Um, tol, side="right") @ Um.T @ p.synthesis_G


def kappa_of(
    p: SamplingProblem,
    tol: Tolerance = DEFAULT_TOL,
    *,
    n_samples: int = 64,
    seed: int = 0,
) -> tuple[float, float]:
    """Pseudo condition numbers of ``G`` and of ``(U^T U)^{+1/2} U^T G``.

    The pointwise sandwiches these numbers come from are verified on
    ``n_samples`` random coefficient vectors before returning.

    Raises
    ------
    InfeasibleProblemError
        If ``cos(phi_GU)`` is not positive.
    NumericalError
        If a sampled coefficient vector violates a sandwich.
    """
    if not check_feasible(p, tol):
        raise InfeasibleProblemError("condition numbers need a feasible problem")
    violations = condition_sandwich_violations(p, tol, n_samples=n_samples, seed=seed)
    if violations:
        raise NumericalError("condition sandwich violated: " + violations[0])
    return pseudo_cond(p.synthesis_G, tol), pseudo_cond(_weighted_cross(p, tol), tol)


def condition_sandwich_violations(
    p: SamplingProblem,
    tol: Tolerance = DEFAULT_TOL,
    *,
    n_samples: int = 64,
    seed: int = 0,
    slack: float = 1e-9,
) -> list[str]:
    """Check the two norm sandwiches for the weighted coefficient system.

    For every coefficient vector ``c``::

        cos * ||G c|| <= ||B c|| <= ||G c||,        B = (U^T U)^{+1/2} U^T G

    and for ``c`` orthogonal to the null space of ``G``::

        sqrt(C) * cos * ||c|| <= ||B c|| <= sqrt(D) * ||c||

    with ``C``, ``D`` the frame bounds of ``G``.  Returns a description of
    every violated inequality (empty when all hold).
    """
    Gm = p.synthesis_G
    B = _weighted_cross(p, tol)
    cos = angle_cos(p, tol)
    gb = frame_bounds(p.G, tol)
    rng = np.random.default_rng(seed)
    row_basis = orth_basis(Gm.T, tol)
    out = []
    for i in range(n_samples):
        c = rng.standard_normal(Gm.shape[1])
        c /= np.linalg.norm(c)
        gc = np.linalg.norm(Gm @ c)
        bc = np.linalg.norm(B @ c)
        s = slack * max(1.0, gc)
        if cos * gc > bc + s:
            out.append(f"sample {i}: cos*||Gc|| = {cos * gc!r} > ||Bc|| = {bc!r}")
        if bc > gc + s:
            out.append(f"sample {i}: ||Bc|| = {bc!r} > ||Gc|| = {gc!r}")
        d = row_basis @ rng.standard_normal(row_basis.shape[1])
        d /= np.linalg.norm(d)
        bd = np.linalg.norm(B @ d)
        if np.sqrt(gb.lower) * cos > bd + slack * max(1.0, np.sqrt(gb.upper)):
            out.append(f"sample {i}: sqrt(C)*cos = {np.sqrt(gb.lower) * cos!r} > ||Bc|| = {bd!r}")
        if bd > np.sqrt(gb.upper) + slack * max(1.0, np.sqrt(gb.upper)):
            out.append(f"sample {i}: ||Bc|| = {bd!r} > sqrt(D) = {np.sqrt(gb.upper)!r}")
    return out


def error_bound(mu: float, eta: float, dist_to_G, noise_norm):
    """Upper bound on ``||P_G f - Q(U^T f + c)||``.

    ``dist_to_G`` is ``||f - P_G f||`` and ``noise_norm`` is ``||c||``; both may
    be arrays, in which case the bound is evaluated elementwise.
    """
    if not mu >= 1 - 1e-12:
        raise InvalidInputError(f"mu must be >= 1, got {mu}")
    if not eta > 0:
        raise InvalidInputError(f"eta must be positive, got {eta}")
    if np.any(np.asarray(dist_to_G) < 0) or np.any(np.asarray(noise_norm) < 0):
        raise InvalidInputError("norms must be nonnegative")
    return dist_to_G * np.sqrt(max(mu * mu - 1.0, 0.0)) + noise_norm * eta


def sharpness_witness(op: ReconstructionOperator) -> NDArray:
    """A unit signal on which ``||f - P f|| / ||f - P_G f||`` reaches ``||P||``.

    Since ``P`` fixes ``G``, ``I - P = (I - P)(I - P_G)``, so the top right
    singular vector of ``I - P`` attains the supremum of the ratio.
    """
    n = op.P.shape[0]
    _, _, Vt = np.linalg.svd(np.eye(n) - op.P)
    return Vt[0]


@dataclass
class DiagnosticsReport:
    """Everything known about a sampling problem and its two reconstructions.

    ``mu_*``, ``eta_*`` and the condition numbers are ``None`` for infeasible
    problems.  ``violation`` names the first inequality that failed its check,
    if any.
    """

    cos_phi: float
    U_bounds: FrameBounds
    G_bounds: FrameBounds
    feasible: bool
    coincide_dim: bool
    coincide_tight: bool
    mu_fis: float | None = None
    mu_gs: float | None = None
    eta_fis: float | None = None
    eta_gs: float | None = None
    kappa_G: float | None = None
    kappa_weighted: float | None = None
    violation: str | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _inequalities(r: DiagnosticsReport) -> list[tuple[str, bool]]:
    A, B = r.U_bounds.lower, r.U_bounds.upper
    cos, eps = r.cos_phi, CHECK_SLACK
    return [
        ("eta_fis >= 1/sqrt(B)", r.eta_fis >= 1 / np.sqrt(B) - eps),
        ("eta_fis <= 1/(sqrt(A) cos)", r.eta_fis <= 1 / (np.sqrt(A) * cos) + eps),
        ("mu_fis == 1/cos", abs(r.mu_fis - 1 / cos) <= eps),
        ("mu_gs >= 1", r.mu_gs >= 1 - eps),
        ("mu_gs <= sqrt(B/A)/cos", r.mu_gs <= np.sqrt(B / A) / cos + eps),
        ("kappa_weighted >= cos kappa_G", r.kappa_weighted >= cos * r.kappa_G - eps),
        ("kappa_weighted <= kappa_G/cos", r.kappa_weighted <= r.kappa_G / cos + eps),
        ("mu_fis <= mu_gs", r.mu_fis <= r.mu_gs + eps),
        ("eta_gs <= eta_fis", r.eta_gs <= r.eta_fis + eps),
    ]


def full_report(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> DiagnosticsReport:
    """Compute every diagnostic and check the inequalities that tie them together."""
    cos = angle_cos(p, tol)
    report = DiagnosticsReport(
        cos_phi=cos,
        U_bounds=frame_bounds(p.U, tol),
        G_bounds=frame_bounds(p.G, tol),
        feasible=check_feasible(p, tol),
        coincide_dim=num_rank(p.synthesis_U, tol) == num_rank(p.synthesis_G, tol),
        coincide_tight=is_tight(p.U, tol),
    )
    if not report.feasible:
        return report
    fis = fis_build(p, tol)
    gs = gs_build(p, tol)
    report.mu_fis = mu_of(fis, p, tol)
    report.mu_gs = mu_of(gs, p, tol)
    report.eta_fis = eta_of(fis)
    report.eta_gs = eta_of(gs)
    report.kappa_G = pseudo_cond(p.synthesis_G, tol)
    report.kappa_weighted = pseudo_cond(_weighted_cross(p, tol), tol)
    checks = _inequalities(report)
    sandwich = condition_sandwich_violations(p, tol)
    checks.append(("pointwise condition sandwiches", not sandwich))
    report.checks = {name: bool(ok) for name, ok in checks}
    report.violation = next((name for name, ok in checks if not ok), None)
    return report


def projection_onto_G(p: SamplingProblem, tol: Tolerance = DEFAULT_TOL) -> NDArray:
    """Orthogonal projector onto the reconstruction space."""
    return orth_proj(p.synthesis_G, tol)
