"""JSON problem files.

Layout::

    {
      "ambient_dim": 2,
      "sampling_vectors": [[0.0, 1.0], [0.8, 1.0]],
      "reconstruction_vectors": [[1.0, 0.0]],
      "signal": [3.0, 5.0],                      (optional)
      "noise": [0.01, -0.02],                    (optional, one entry per sampling vector)
      "tolerance": {"rel_rank_tol": 1e-12,       (optional, either key)
                    "abs_check_tol": 1e-9}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidInputError
from .frames import FrameSequence
from .linalg import Tolerance
from .problem import SamplingProblem

__all__ = ["ProblemFile", "ProblemFileError", "parse_problem_file", "load_problem_file", "dump_problem_file"]


class ProblemFileError(InvalidInputError):
    """A problem file could not be parsed; the message names the line or field."""


@dataclass(eq=False)
class ProblemFile:
    problem: SamplingProblem
    signal: NDArray | None = None
    noise: NDArray | None = None
    tolerance: dict = field(default_factory=dict)


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ProblemFileError(f"{where}: expected a number, got {x!r}")
    if not np.isfinite(x):
        raise ProblemFileError(f"{where}: non-finite value")
    return float(x)


def _vector(x, n, where):
    if not isinstance(x, list):
        raise ProblemFileError(f"{where}: expected a list of numbers")
    if len(x) != n:
        raise ProblemFileError(f"{where}: expected {n} entries, got {len(x)}")
    return np.array([_number(v, f"{where}[{i}]") for i, v in enumerate(x)])


def _vectors(doc, key, n):
    rows = doc.get(key)
    if not isinstance(rows, list) or not rows:
        raise ProblemFileError(f"field '{key}': expected a non-empty list of vectors")
    M = np.stack([_vector(r, n, f"field '{key}'[{j}]") for j, r in enumerate(rows)])
    if not np.any(M):
        raise ProblemFileError(f"field '{key}': all vectors are zero")
    return M


def parse_problem_file(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ProblemFileError("top level: expected a JSON object")
    unknown = set(doc) - {
        "ambient_dim", "sampling_vectors", "reconstruction_vectors", "signal", "noise", "tolerance",
    }
    if unknown:
        raise ProblemFileError(f"unknown field(s): {', '.join(sorted(unknown))}")
    n = doc.get("ambient_dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ProblemFileError(f"field 'ambient_dim': expected a positive integer, got {n!r}")
    U = _vectors(doc, "sampling_vectors", n)
    G = _vectors(doc, "reconstruction_vectors", n)
    signal = _vector(doc["signal"], n, "field 'signal'") if doc.get("signal") is not None else None
    noise = None
    if doc.get("noise") is not None:
        noise = _vector(doc["noise"], U.shape[0], "field 'noise'")
    tol = doc.get("tolerance") or {}
    if not isinstance(tol, dict) or set(tol) - {"rel_rank_tol", "abs_check_tol"}:
        raise ProblemFileError("field 'tolerance': expected keys rel_rank_tol and/or abs_check_tol")
    tol = {k: _number(v, f"field 'tolerance.{k}'") for k, v in tol.items()}
    try:
        Tolerance(**tol)
    except InvalidInputError as exc:
        raise ProblemFileError(f"field 'tolerance': {exc}") from None
    return ProblemFile(SamplingProblem(FrameSequence(U), FrameSequence(G)), signal, noise, tol)


def load_problem_file(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem_file(fh.read())


def dump_problem_file(pf: ProblemFile) -> str:
    """Serialize with shortest round-trip float formatting."""
    doc = {
        "ambient_dim": pf.problem.ambient_dim,
        "sampling_vectors": pf.problem.U.vectors.tolist(),
        "reconstruction_vectors": pf.problem.G.vectors.tolist(),
    }
    if pf.signal is not None:
        doc["signal"] = np.asarray(pf.signal, float).tolist()
    if pf.noise is not None:
        doc["noise"] = np.asarray(pf.noise, float).tolist()
    if pf.tolerance:
        doc["tolerance"] = dict(pf.tolerance)
    return json.dumps(doc, indent=2) + "\n"
