"""The two planar examples comparing the reconstruction methods.

In both, ``G`` is the x-axis and the sampling vectors span the whole plane,
so ``cos(phi_GU) = 1`` and the frame-independent operator is the orthogonal
projection onto ``G``.  The reference values are the published two- and
three-digit roundings.
"""

from __future__ import annotations

import numpy as np

from .problem import SamplingProblem

__all__ = ["EXAMPLES", "SIGNAL", "TABLES", "TABLE_TOL", "example_problem"]

SIGNAL = np.array([3.0, 5.0])

EXAMPLES = {
    "example1": {"sampling": [[0.0, 1.0], [0.8, 1.0]], "reconstruction": [[1.0, 0.0]]},
    "example2": {"sampling": [[1.0, 0.0], [1.0, 0.8]], "reconstruction": [[1.0, 0.0]]},
}

TABLES = {
    "example1": {"eta_fis": 1.77, "mu_fis": 1.0, "eta_gs": 1.25, "mu_gs": 1.6},
    "example2": {"eta_fis": 1.0, "mu_fis": 1.0, "eta_gs": 0.71, "mu_gs": 1.08},
}

TABLE_TOL = 0.01


def example_problem(name: str) -> SamplingProblem:
    ex = EXAMPLES[name]
    return SamplingProblem.from_vectors(ex["sampling"], ex["reconstruction"])
