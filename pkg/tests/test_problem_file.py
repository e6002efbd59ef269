import json

import numpy as np
import pytest

from oblique_sampling.paper_examples import SIGNAL, example_problem
from oblique_sampling.problem_file import (
    ProblemFile,
    ProblemFileError,
    dump_problem_file,
    parse_problem_file,
)

VALID = {
    "ambient_dim": 2,
    "sampling_vectors": [[0.0, 1.0], [0.8, 1.0]],
    "reconstruction_vectors": [[1.0, 0.0]],
    "signal": [3.0, 5.0],
    "noise": [0.01, -0.02],
    "tolerance": {"abs_check_tol": 1e-8},
}


def test_parse_valid():
    pf = parse_problem_file(json.dumps(VALID))
    assert pf.problem == example_problem("example1")
    np.testing.assert_array_equal(pf.signal, SIGNAL)
    np.testing.assert_array_equal(pf.noise, [0.01, -0.02])
    assert pf.tolerance == {"abs_check_tol": 1e-8}


def test_round_trip():
    pf = ProblemFile(example_problem("example2"), signal=SIGNAL, noise=np.array([0.1, 1 / 3]))
    again = parse_problem_file(dump_problem_file(pf))
    assert again.problem == pf.problem
    np.testing.assert_array_equal(again.noise, pf.noise)
    assert dump_problem_file(again) == dump_problem_file(pf)


@pytest.mark.parametrize(
    "patch, message",
    [
        ({"ambient_dim": 3}, "sampling_vectors'\\[0\\]: expected 3 entries"),
        ({"ambient_dim": "2"}, "ambient_dim"),
        ({"reconstruction_vectors": []}, "reconstruction_vectors"),
        ({"sampling_vectors": [[0.0, 0.0]]}, "all vectors are zero"),
        ({"noise": [1.0]}, "noise'.*expected 2 entries"),
        ({"signal": [1.0, "x"]}, "signal'\\[1\\]"),
        ({"tolerance": {"rel_rank_tol": -1}}, "tolerance"),
        ({"extra": 1}, "unknown field"),
    ],
)
def test_field_errors(patch, message):
    doc = dict(VALID, **patch)
    with pytest.raises(ProblemFileError, match=message):
        parse_problem_file(json.dumps(doc))


def test_syntax_error_reports_line():
    with pytest.raises(ProblemFileError, match="line 3"):
        parse_problem_file('{\n  "ambient_dim": 2,\n  oops\n}')
