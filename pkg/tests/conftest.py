import numpy as np
import pytest

from oblique_sampling import SamplingProblem
from oblique_sampling.paper_examples import example_problem
from oblique_sampling.random_problems import DEFAULT_SEED, random_suite


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def example1() -> SamplingProblem:
    return example_problem("example1")


@pytest.fixture
def example2() -> SamplingProblem:
    return example_problem("example2")


@pytest.fixture(scope="session")
def suite() -> list[SamplingProblem]:
    """120 feasible random problems, n in 2..12, frame redundancy 1-3x."""
    return list(random_suite(120, seed=DEFAULT_SEED))


def random_rank_matrix(rng, rows, cols, rank):
    """Random matrix with exactly ``rank`` nonzero singular values in [0.5, 3]."""
    if rank == 0:
        return np.zeros((rows, cols))
    A = np.linalg.qr(rng.standard_normal((rows, rank)))[0]
    B = np.linalg.qr(rng.standard_normal((cols, rank)))[0]
    return (A * rng.uniform(0.5, 3.0, rank)) @ B.T


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the summary is printed at the end of the run."""
    name = request.node.name

    def record(ok: bool, detail: str = ""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
