"""Seeded random sampling problems for property and acceptance tests.

Frames are products of standard-normal matrices, ``U = A C`` with ``A`` of
shape ``(n, dim)`` and ``C`` of shape ``(dim, m)``, so a frame with more
vectors than its span's dimension is genuinely redundant (rank-deficient
synthesis matrix).  Problems are redrawn until ``cos(phi_GU) > min_cos``.
"""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from .frames import FrameSequence
from .linalg import DEFAULT_TOL, Tolerance
from .problem import SamplingProblem, angle_cos

__all__ = ["DEFAULT_SEED", "random_frame", "random_problem", "random_suite"]

DEFAULT_SEED = 20240611
MIN_COS = 0.05


def random_frame(rng: np.random.Generator, n: int, dim: int, m: int) -> FrameSequence:
    """``m`` vectors in ``R^n`` spanning a random ``dim``-dimensional subspace."""
    return FrameSequence.from_columns(rng.standard_normal((n, dim)) @ rng.standard_normal((dim, m)))


def random_problem(
    rng: np.random.Generator,
    n: int | None = None,
    *,
    dim_U: int | None = None,
    dim_G: int | None = None,
    max_redundancy: int = 3,
    min_cos: float = MIN_COS,
    tol: Tolerance = DEFAULT_TOL,
    max_tries: int = 1000,
) -> SamplingProblem:
    """Draw a feasible problem with ``cos(phi_GU) > min_cos``.

    Unspecified sizes are drawn uniformly: ``n`` in 2..12, ``dim U`` in 1..n,
    ``dim G`` in 1..dim U.  Each frame has between ``dim`` and
    ``max_redundancy * dim`` vectors.
    """
    for _ in range(max_tries):
        nn = int(rng.integers(2, 13)) if n is None else n
        du = int(rng.integers(1, nn + 1)) if dim_U is None else dim_U
        dg = int(rng.integers(1, du + 1)) if dim_G is None else dim_G
        mu = int(rng.integers(du, max_redundancy * du + 1))
        mg = int(rng.integers(dg, max_redundancy * dg + 1))
        p = SamplingProblem(random_frame(rng, nn, du, mu), random_frame(rng, nn, dg, mg))
        if angle_cos(p, tol) > min_cos:
            return p
    raise RuntimeError(f"no problem with cos(phi) > {min_cos} after {max_tries} draws")


def random_suite(count: int = 120, seed: int = DEFAULT_SEED, **kwargs) -> Iterator[SamplingProblem]:
    """Reproducible stream of ``count`` feasible random problems."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_problem(rng, **kwargs)
