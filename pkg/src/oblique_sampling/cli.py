"""Command-line interface.

Subcommands: ``analyze``, ``reconstruct``, ``figure``, ``paper-examples``.

Exit codes: 0 success, 2 input error, 3 unsupported configuration (including
infeasible problems for commands that need an operator), 4 numerical failure.
The environment variable ``OBLIQUE_SAMPLING_TOL`` sets the default relative
rank tolerance; a ``tolerance`` block in the problem file overrides it and
``--tol`` overrides both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .diagnostics import error_bound, eta_of, full_report, mu_of
from .errors import (
    InfeasibleProblemError,
    InvalidInputError,
    InvalidOperatorError,
    NumericalError,
    UnsupportedError,
)
from .figures import DEFAULT_SAMPLES, figure_data
from .linalg import Tolerance, orth_proj
from .paper_examples import EXAMPLES, SIGNAL, TABLE_TOL, TABLES, example_problem
from .problem_file import ProblemFile, dump_problem_file, load_problem_file
from .projections import build, consistency_residual, measure, reconstruct

log = logging.getLogger("oblique_sampling")

TOL_ENV = "OBLIQUE_SAMPLING_TOL"

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_NUMERICAL = 0, 2, 3, 4

METHODS = {"gs": "generalized", "fis": "frame_independent", "consistent": "consistent"}


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _tolerance(args, pf: ProblemFile | None = None) -> Tolerance:
    kw = {}
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            kw["rel_rank_tol"] = float(env)
        except ValueError:
            raise CLIError(f"{TOL_ENV}={env!r} is not a number", EXIT_INPUT) from None
    if pf is not None:
        kw.update(pf.tolerance)
    if getattr(args, "tol", None) is not None:
        kw["rel_rank_tol"] = args.tol
    return Tolerance(**kw)


def _write(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CLIError(f"cannot write {output}: {exc.strerror}", EXIT_INPUT) from None


def _load(path: str) -> ProblemFile:
    try:
        return load_problem_file(path)
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None
    except InvalidInputError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_INPUT) from None


def report_dict(pf: ProblemFile, tol: Tolerance) -> dict:
    return full_report(pf.problem, tol).to_dict()


def _flatten(d: dict, prefix: str = "") -> list[tuple[str, object]]:
    rows = []
    for k, v in d.items():
        if isinstance(v, dict):
            rows.extend(_flatten(v, f"{prefix}{k}."))
        else:
            rows.append((prefix + k, v))
    return rows


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def report_csv(d: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["quantity", "value"])
    for k, v in _flatten(d):
        w.writerow([k, _csv_value(v)])
    return buf.getvalue()


def _json(d: dict) -> str:
    return json.dumps(d, indent=2) + "\n"


def cmd_analyze(args) -> int:
    pf = _load(args.input)
    d = report_dict(pf, _tolerance(args, pf))
    _write(report_csv(d) if args.format == "csv" else _json(d), args.output)
    return EXIT_OK


def reconstruction_dict(pf: ProblemFile, method: str, tol: Tolerance) -> dict:
    p = pf.problem
    f = pf.signal
    op = build(METHODS[method], p, tol)
    clean = measure(p, f)
    noise = np.zeros_like(clean) if pf.noise is None else pf.noise
    b = clean + noise
    signal, coeffs = reconstruct(op, b)
    PG = orth_proj(p.synthesis_G, tol)
    mu, eta = mu_of(op, p, tol), eta_of(op)
    dist = float(np.linalg.norm(f - PG @ f))
    noise_norm = float(np.linalg.norm(noise))
    return {
        "method": op.method,
        "signal": signal.tolist(),
        "coefficients": coeffs.tolist(),
        "measurement_residual": float(np.linalg.norm(b - p.U.vectors @ (p.synthesis_G @ coeffs))),
        "consistency_residual": consistency_residual(op, p, f, tol),
        "mu": mu,
        "eta": eta,
        "dist_to_G": dist,
        "noise_norm": noise_norm,
        "error_bound": float(error_bound(mu, eta, dist, noise_norm)),
        "achieved_error": float(np.linalg.norm(PG @ f - signal)),
    }


def cmd_reconstruct(args) -> int:
    pf = _load(args.input)
    if pf.signal is None:
        raise CLIError(f"{args.input}: field 'signal' is required for reconstruct", EXIT_INPUT)
    d = reconstruction_dict(pf, args.method, _tolerance(args, pf))
    _write(_json(d), args.output)
    return EXIT_OK


def cmd_figure(args) -> int:
    pf = _load(args.input)
    if pf.signal is None:
        raise CLIError(f"{args.input}: field 'signal' is required for figure", EXIT_INPUT)
    if args.samples < 1:
        raise CLIError("--samples must be positive", EXIT_INPUT)
    fig = figure_data(pf.problem, pf.signal, args.samples, _tolerance(args, pf))
    _write(fig.to_csv(), args.output)
    return EXIT_OK


def cmd_paper_examples(args) -> int:
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CLIError(f"cannot create {out}: {exc.strerror}", EXIT_INPUT) from None
    tol = _tolerance(args)
    all_ok = True
    for name in EXAMPLES:
        pf = ProblemFile(example_problem(name), signal=SIGNAL.copy())
        report = report_dict(pf, tol)
        _write(dump_problem_file(pf), str(out / f"{name}.json"))
        _write(_json(report), str(out / f"{name}_report.json"))
        _write(figure_data(pf.problem, pf.signal, args.samples, tol).to_csv(),
               str(out / f"{name}_figure.csv"))
        for key, ref in TABLES[name].items():
            value = report[key]
            ok = abs(value - ref) <= TABLE_TOL
            all_ok &= ok
            print(f"{name} {key:8s} computed={value:.12g} paper={ref:g} "
                  f"{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_NUMERICAL


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oblique-sampling",
        description="Reconstruction from frame measurements by oblique projections.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_help="output file (default: stdout)"):
        p.add_argument("--output", "-o", default=None, help=output_help)
        p.add_argument("--tol", type=float, default=None, help="relative rank tolerance")

    p = sub.add_parser("analyze", help="write the diagnostics report for a problem file")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reconstruct", help="reconstruct the problem file's signal")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--method", choices=tuple(METHODS), default="fis")
    common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("figure", help="emit ellipse and segment data for a planar problem")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("paper-examples", help="reproduce the two planar comparison examples")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common(p, output_help="output directory")
    p.set_defaults(func=cmd_paper_examples, output="paper_examples")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.tol is not None:
            Tolerance(rel_rank_tol=args.tol)
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (UnsupportedError, InfeasibleProblemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (NumericalError, InvalidOperatorError, np.linalg.LinAlgError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
