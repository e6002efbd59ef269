"""Planar figure data: the measurement ellipse and its images under both projections.

For a sampling frame spanning ``R^2`` and a signal ``p``, the set
``E = {x : ||U^T (p - x)|| <= 1}`` contains every signal whose measurements lie
within unit distance of those of ``p``.  Each reconstruction maps ``E`` onto a
segment of the line ``G`` centred at ``P p`` whose half-length is the
operator's ``eta``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .diagnostics import eta_of
from .errors import InvalidInputError, UnsupportedError
from .linalg import DEFAULT_TOL, Tolerance, gram_sqrt_pinv, num_rank
from .problem import SamplingProblem
from .projections import fis_build, gs_build

__all__ = ["DEFAULT_SAMPLES", "FigureData", "figure_data"]

DEFAULT_SAMPLES = 512


@dataclass(frozen=True, eq=False)
class FigureData:
    ellipse_boundary: NDArray  # (samples, 2)
    center: NDArray
    segment_fis: NDArray  # (2, 2), rows are endpoints
    segment_gs: NDArray
    g_direction: NDArray
    eta_fis: float
    eta_gs: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "index", "x", "y"])

        def row(kind, i, pt):
            w.writerow([kind, i, repr(float(pt[0])), repr(float(pt[1]))])

        row("center", 0, self.center)
        row("g_direction", 0, self.g_direction)
        for i, pt in enumerate(self.segment_fis):
            row("segment_fis", i, pt)
        for i, pt in enumerate(self.segment_gs):
            row("segment_gs", i, pt)
        for i, pt in enumerate(self.ellipse_boundary):
            row("boundary", i, pt)
        return buf.getvalue()


def figure_data(
    p: SamplingProblem,
    signal: ArrayLike,
    samples: int = DEFAULT_SAMPLES,
    tol: Tolerance = DEFAULT_TOL,
) -> FigureData:
    """Sample the boundary of ``E`` and compute both projected segments.

    Raises
    ------
    UnsupportedError
        Unless the problem is planar with one reconstruction vector and a
        sampling frame of rank 2 (otherwise ``E`` is degenerate).
    """
    if p.ambient_dim != 2 or len(p.G) != 1 or len(p.U) < 2:
        raise UnsupportedError(
            "figure data needs ambient_dim 2, at least 2 sampling vectors and "
            "exactly 1 reconstruction vector"
        )
    Um = p.synthesis_U
    if num_rank(Um, tol) < 2:
        raise UnsupportedError("sampling vectors do not span the plane; ellipse is degenerate")
    if samples < 1:
        raise InvalidInputError("samples must be positive")
    center = np.asarray(signal, dtype=np.float64)
    if center.shape != (2,):
        raise InvalidInputError("signal must be a point in the plane")

    root = gram_sqrt_pinv(Um, tol, side="left")  # (U U^T)^{-1/2}
    theta = 2 * np.pi * np.arange(samples) / samples
    circle = np.stack([np.cos(theta), np.sin(theta)])
    boundary = (center[:, None] - root @ circle).T

    g = p.G.vectors[0]
    g_hat = g / np.linalg.norm(g)
    segments = {}
    etas = {}
    for name, builder in (("fis", fis_build), ("gs", gs_build)):
        op = builder(p, tol)
        eta = eta_of(op)
        mid = op.P @ center
        segments[name] = np.stack([mid - eta * g_hat, mid + eta * g_hat])
        etas[name] = eta
    return FigureData(
        ellipse_boundary=boundary,
        center=center,
        segment_fis=segments["fis"],
        segment_gs=segments["gs"],
        g_direction=g_hat,
        eta_fis=etas["fis"],
        eta_gs=etas["gs"],
    )
