import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lie2herm import fileformat
from lie2herm.errors import ParseError
from lie2herm.lie2 import MetricLieAlgebra, random_valid

GOOD = """
dim: 3
brackets:
  - {i: 1, j: 2, coeffs: [{k: 3, value: 1}]}
"""


def test_parse_minimal():
    doc = fileformat.loads(GOOD)
    assert doc.dim == 3 and doc.J is None and doc.hints is None
    assert doc.algebra.C[0, 1, 2] == 1.0 and doc.algebra.C[1, 0, 2] == -1.0
    assert np.array_equal(doc.algebra.G, np.eye(3))


@pytest.mark.parametrize("text", [
    "not: [valid",
    "- 1\n- 2",
    "brackets: []",
    "dim: three",
    "dim: 3\nbrackets:\n  - {i: 2, j: 1, coeffs: []}",
    "dim: 3\nbrackets:\n  - {i: 1, j: 4, coeffs: []}",
    "dim: 3\nbrackets:\n  - {i: 1, j: 2, coeffs: [{k: 9, value: 1}]}",
    "dim: 3\nbrackets:\n  - {i: 1, j: 2, coeffs: [{k: 1, value: x}]}",
    "dim: 3\nbrackets:\n  - {i: 1, j: 2, coeffs: []}\n  - {i: 1, j: 2, coeffs: []}",
    "dim: 2\nmetric: [[1, 0], [0, -1]]",
    "dim: 2\nJ: [[0, 1]]",
    "dim: 2\nhints: {e1: [1, 0]}",
    "dim: 2\nextra: 1",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        fileformat.loads(text)


def test_missing_file():
    with pytest.raises(ParseError):
        fileformat.load("/nonexistent/file.yaml")


def test_metric_and_hints_roundtrip():
    G = np.array([[2.0, 0.5], [0.5, 1.0]])
    doc = fileformat.AlgebraFile(MetricLieAlgebra(np.zeros((2, 2, 2)), G), hints=(np.array([1.0, 0]), np.array([0, 1.0])))
    back = fileformat.loads(fileformat.dumps(doc))
    assert back == doc
    assert "metric" in fileformat.dumps(doc)


floats = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(st.lists(floats, min_size=3, max_size=3), st.lists(floats, min_size=16, max_size=16))
def test_float_roundtrip_bit_exact(brs, jvals):
    C = np.zeros((4, 4, 4))
    for (i, j, k), v in zip([(0, 1, 2), (0, 3, 1), (2, 3, 0)], brs):
        C[i, j, k], C[j, i, k] = v, -v
    doc = fileformat.AlgebraFile(MetricLieAlgebra(C), J=np.array(jvals).reshape(4, 4), name="x",
                                 expected={"verdict": "SKT"})
    text = fileformat.dumps(doc)
    back = fileformat.loads(text)
    assert back == doc
    assert fileformat.dumps(back) == text


@given(st.integers(0, 10**6))
def test_random_algebra_roundtrip(seed):
    doc = fileformat.AlgebraFile(random_valid(seed, 6))
    assert fileformat.loads(fileformat.dumps(doc)) == doc
