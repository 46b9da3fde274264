import doctest

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

import semiring_bellman.estimators as estimators
from semiring_bellman import BellmanSolver, UndefinedClosureError, make_instance, solve_interval, solve_point

inf = np.inf


def test_docstring_example():
    result = doctest.testmod(estimators)
    assert result.attempted > 0 and result.failed == 0


def test_params_round_trip():
    est = BellmanSolver(semiring="rplus", split="balanced", tolerance=1e-6)
    assert est.get_params() == {"semiring": "rplus", "split": "balanced", "tolerance": 1e-6}
    est.set_params(split="scalar_pivot")
    assert est.split == "scalar_pivot"
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est


def test_not_fitted():
    with pytest.raises(NotFittedError):
        BellmanSolver().predict([[0.0]])


def test_predict_matches_solve_point():
    A = [[0.2, 0.3], [0.1, 0.4]]
    est = BellmanSolver("rplus").fit(A)
    np.testing.assert_allclose(est.predict([[1.0], [1.0]]), [[2.0], [2.0]], rtol=1e-12)
    assert np.array_equal(est.transform([[1.0], [1.0]]), solve_point(make_instance("rplus"), A, [[1.0], [1.0]]).X)
    X = est.predict([[1.0], [1.0]])
    np.testing.assert_allclose(est.residual(X, [[1.0], [1.0]]), X, rtol=1e-12)


def test_interval_fit():
    s = make_instance("maxplus")
    A = np.array([[[-2.0, -1.0]]])
    est = BellmanSolver("maxplus").fit(A)
    assert est.interval_
    assert est.predict([[[3.0, 4.0]]]).tolist() == [[[3.0, 4.0]]]
    # a point right-hand side against an interval fit is promoted
    assert est.predict([[3.0]]).tolist() == [[[3.0, 3.0]]]
    assert np.array_equal(est.predict([[[3.0, 4.0]]]), solve_interval(s, A, [[[3.0, 4.0]]]).X)


def test_point_fit_interval_rhs():
    est = BellmanSolver("maxplus").fit([[-1.0]])
    assert est.fit_predict([[-1.0]], [[[1.0, 2.0]]]).tolist() == [[[1.0, 2.0]]]


def test_validation_errors():
    with pytest.raises(ValueError, match="square"):
        BellmanSolver().fit(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="rows"):
        BellmanSolver().fit(np.zeros((2, 2))).predict(np.zeros((3, 1)))
    with pytest.raises(ValueError, match="not an element"):
        BellmanSolver("rplus").fit([[-1.0]])
    with pytest.raises(ValueError, match="non-integer"):
        BellmanSolver("chain:3").fit([[0.5]])
    with pytest.raises(ValueError, match="unknown semiring"):
        BellmanSolver("tropical").fit([[0.0]])
    with pytest.raises(UndefinedClosureError):
        BellmanSolver("rplus").fit([[1.0]])


def test_tolerance_is_applied():
    est = BellmanSolver("rplus", tolerance=1e-3).fit([[0.5]])
    assert est.semiring_.rtol == 1e-3
