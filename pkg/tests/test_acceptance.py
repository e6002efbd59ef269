"""Exit criteria.  Each test records one PASS/FAIL line in the run summary."""

import time

import numpy as np
import pytest

from oblique_sampling import (
    FrameSequence,
    SamplingProblem,
    angle_cos,
    canonical_tight,
    eta_of,
    fis_build,
    full_report,
    gs_build,
    mu_of,
    num_rank,
    orth_proj,
    pinv,
    principal_angle_cos_oracle,
    sharpness_witness,
)
from oblique_sampling.diagnostics import condition_sandwich_violations, error_bound
from oblique_sampling.figures import figure_data
from oblique_sampling.linalg import gram_sqrt_pinv, orth_complement
from oblique_sampling.paper_examples import SIGNAL, example_problem
from oblique_sampling.random_problems import random_frame, random_problem

from conftest import random_rank_matrix


def max_gap(a, b):
    return float(np.max(np.abs(a - b)))


def _table(name, expected):
    p = example_problem(name)
    start = time.perf_counter()
    r = full_report(p)
    elapsed = time.perf_counter() - start
    errs = {k: abs(getattr(r, k) - v) for k, (v, _) in expected.items()}
    ok = all(errs[k] <= tol for k, (_, tol) in expected.items()) and elapsed < 1.0
    detail = ", ".join(f"{k}={getattr(r, k):.6f}" for k in expected) + f", {elapsed * 1e3:.1f} ms"
    return ok, detail


def test_ac01_table_example1(criterion):
    criterion(*_table("example1", {
        "eta_fis": (1.77, 0.01), "mu_fis": (1.0, 1e-8),
        "eta_gs": (1.25, 0.005), "mu_gs": (1.60, 0.005),
    }))


def test_ac02_table_example2(criterion):
    criterion(*_table("example2", {
        "eta_fis": (1.0, 1e-6), "mu_fis": (1.0, 1e-8),
        "eta_gs": (0.71, 0.005), "mu_gs": (1.08, 0.005),
    }))


def test_ac03_mu_is_inverse_cos(suite, criterion):
    assert len(suite) >= 100
    assert {p.ambient_dim for p in suite} == set(range(2, 13))
    worst = max(abs(mu_of(fis_build(p), p) - 1 / angle_cos(p)) for p in suite)
    criterion(worst <= 1e-8, f"max |mu_fis - 1/cos| = {worst:.2e} over {len(suite)} problems")


def test_ac04_frame_independent_structure(suite, criterion):
    worst = 0.0
    for p in suite:
        P = fis_build(p).P
        G = p.synthesis_G
        K = orth_complement(orth_proj(p.synthesis_U) @ G)
        worst = max(worst, np.linalg.norm(P @ P - P, 2))
        worst = max(worst, np.linalg.norm(P @ G - G, axis=0).max())
        if K.size:
            worst = max(worst, np.linalg.norm(P @ K, axis=0).max())
    criterion(worst <= 1e-8, f"max residual {worst:.2e}")


def test_ac05_coincidence(suite, criterion):
    rng = np.random.default_rng(55)
    equal_dim = [p for p in suite if num_rank(p.synthesis_U) == num_rank(p.synthesis_G)]
    equal_dim += [random_problem(rng, dim_U=d, dim_G=d) for d in (1, 2, 3, 5, 8) for _ in range(4)]
    worst_a = max(max_gap(fis_build(p).P, gs_build(p).P) for p in equal_dim)

    tight = []
    for p in suite[:60]:
        scale = rng.uniform(0.5, 3.0)
        tight.append(SamplingProblem(FrameSequence(scale * canonical_tight(p.U).vectors), p.G))
    worst_b = max(max_gap(fis_build(p).P, gs_build(p).P) for p in tight)

    worst_c = max(
        max_gap(fis_build(p).P, gs_build(SamplingProblem(canonical_tight(p.U), p.G)).P)
        for p in suite
    )
    ok = max(worst_a, worst_b, worst_c) <= 1e-8
    criterion(ok, f"equal dims {worst_a:.1e} ({len(equal_dim)}), tight U {worst_b:.1e}, "
                  f"canonical tight {worst_c:.1e}")


def test_ac06_optimality_orderings(suite, criterion):
    bad = 0
    for p in suite:
        fis, gs = fis_build(p), gs_build(p)
        bad += mu_of(fis, p) > mu_of(gs, p) + 1e-8
        bad += eta_of(gs) > eta_of(fis) + 1e-8
    criterion(bad == 0, f"{bad} ordering violations")


def test_ac07_bound_suites(suite, criterion):
    failures = []
    for i, p in enumerate(suite):
        r = full_report(p)
        if r.violation:
            failures.append(f"#{i}: {r.violation}")
        if condition_sandwich_violations(p, n_samples=64, seed=i, slack=1e-8):
            failures.append(f"#{i}: pointwise sandwich")
    criterion(not failures, f"{len(failures)} violations" + (f" ({failures[0]})" if failures else ""))


def test_ac08_noise_bound(suite, criterion):
    rng = np.random.default_rng(8)
    worst = -np.inf
    for p in suite:
        PG = orth_proj(p.synthesis_G)
        F = rng.standard_normal((p.ambient_dim, 1000))
        C = rng.standard_normal((len(p.U), 1000)) * rng.uniform(0, 2, 1000)
        dist = np.linalg.norm(F - PG @ F, axis=0)
        noise = np.linalg.norm(C, axis=0)
        for op in (fis_build(p), gs_build(p)):
            mu, eta = mu_of(op, p), eta_of(op)
            achieved = np.linalg.norm(PG @ F - op.Q @ (p.U.vectors @ F + C), axis=0)
            bound = error_bound(mu, eta, dist, noise)
            worst = max(worst, float(np.max(achieved - bound)))
    criterion(worst <= 1e-8, f"max (achieved - bound) = {worst:.2e}")


def test_ac09_oracles(suite, criterion):
    angle = max(
        abs(angle_cos(p) - principal_angle_cos_oracle(p.synthesis_G, p.synthesis_U)) for p in suite
    )
    rng = np.random.default_rng(9)
    ident = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        dim = int(rng.integers(1, n + 1))
        Um = random_frame(rng, n, dim, int(rng.integers(dim, 3 * dim + 1))).vectors.T
        left = gram_sqrt_pinv(Um, side="right") @ Um.T
        right = Um.T @ gram_sqrt_pinv(Um, side="left")
        ident = max(ident, max_gap(left, right))
    mp = 0.0
    for rows in range(1, 7):
        for cols in range(1, 7):
            for rank in range(0, min(rows, cols) + 1):
                M = random_rank_matrix(rng, rows, cols, rank)
                X = pinv(M)
                mp = max(mp, max_gap(M @ X @ M, M), max_gap(X @ M @ X, X),
                         max_gap((M @ X).T, M @ X), max_gap((X @ M).T, X @ M))
    ok = angle <= 1e-8 and ident <= 1e-9 and mp <= 1e-9
    criterion(ok, f"angle {angle:.1e}, analysis identity {ident:.1e}, Moore-Penrose {mp:.1e}")


def test_ac10_sharpness(suite, criterion):
    worst = 0.0
    for p in suite:
        op = fis_build(p)
        mu = mu_of(op, p)
        f = sharpness_witness(op)
        PG = orth_proj(p.synthesis_G)
        dist = np.linalg.norm(f - PG @ f)
        if dist < 1e-12:  # G = whole space, nothing to attain
            continue
        ratio = np.linalg.norm(f - op.P @ f) / dist
        worst = max(worst, mu - ratio)
    seg = 0.0
    for name in ("example1", "example2"):
        p = example_problem(name)
        fig = figure_data(p, SIGNAL)
        # sup over the ellipse of |P x - P p| is ||P (U U^T)^{-1/2}||, from the geometry alone
        root = gram_sqrt_pinv(p.synthesis_U, side="left")
        for op, s in ((fis_build(p), fig.segment_fis), (gs_build(p), fig.segment_gs)):
            half = np.linalg.norm(s[1] - s[0]) / 2
            seg = max(seg, abs(half - np.linalg.norm(op.P @ root, 2)))
    criterion(worst <= 1e-6 and seg <= 1e-6,
              f"witness shortfall {worst:.1e}, segment half-length error {seg:.1e}")
