"""Sampling and reconstruction in different subspaces by oblique projections.

Given inner products of a signal with a frame for a sampling space ``U``, the
package reconstructs an approximation in a reconstruction space ``G`` with
either generalized sampling or frame-independent sampling, and reports the
stability (``eta``) and quasi-optimality (``mu``) constants of both.
"""

from .diagnostics import (
    DiagnosticsReport,
    angle_cos,
    error_bound,
    eta_of,
    full_report,
    kappa_of,
    mu_of,
    sharpness_witness,
)
from .errors import (
    InfeasibleProblemError,
    InvalidInputError,
    InvalidOperatorError,
    NumericalError,
    ObliqueSamplingError,
    UnsupportedError,
)
from .frames import (
    FrameBounds,
    FrameSequence,
    canonical_tight,
    frame_bounds,
    frame_operator,
    is_riesz,
    is_tight,
    synthesis,
)
from .linalg import (
    Tolerance,
    num_rank,
    op_norm,
    orth_proj,
    pinv,
    principal_angle_cos_oracle,
    psd_sqrt_pinv,
)
from .problem import SamplingProblem
from .projections import (
    ReconstructionOperator,
    build,
    check_feasible,
    consistency_residual,
    consistent_build,
    fis_build,
    gs_build,
    measure,
    reconstruct,
)

__version__ = "0.1.0"
