"""Estimator-style front end.

:class:`BellmanSolver` follows the scikit-learn conventions: hyperparameters
go to ``__init__`` untouched, ``fit(A)`` learns the closure ``A*`` and stores
fitted attributes with a trailing underscore, ``predict(B)`` returns the
least solution ``A* B`` of ``X = AX + B``. ``get_params``/``set_params`` and
``clone`` come from :class:`sklearn.base.BaseEstimator`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .bellman import BellmanSolution, residual, solution_from_closure
from .interval import interval_extension
from .matrix import interval_closure, mat_star
from .validation import check_matrix, check_semiring

__all__ = ["BellmanSolver"]


class BellmanSolver(BaseEstimator):
    """Solve ``X = AX + B`` over a positive semiring.

    Parameters
    ----------
    semiring : str or Semiring, default="maxplus"
        E.g. ``"rplus"``, ``"maxplus"``, ``"minplus"``, ``"maxmin:0:10"``.
    split : {"scalar_pivot", "balanced"}, default="scalar_pivot"
        Block size used by the closure recursion.
    tolerance : float or None, default=None
        Overrides the relative comparison tolerance of the semiring.

    Attributes
    ----------
    semiring_ : Semiring
    closure_ : ndarray
        ``A*``; interval-valued (trailing axis of length 2) if ``A`` was.
    interval_ : bool
    n_features_in_ : int
        Order of ``A``.

    Examples
    --------
    >>> solver = BellmanSolver("maxplus").fit([[-1.0, -2.0], [-3.0, -1.0]])
    >>> solver.closure_
    array([[ 0., -2.],
           [-3.,  0.]])
    >>> solver.predict([[5.0], [1.0]])
    array([[5.],
           [2.]])
    """

    def __init__(self, semiring="maxplus", split="scalar_pivot", tolerance=None):
        self.semiring = semiring
        self.split = split
        self.tolerance = tolerance

    def _semiring(self):
        s = check_semiring(self.semiring)
        if self.tolerance is not None:
            s = s.with_tolerance(self.tolerance)
        return s

    def fit(self, A, y=None):
        s = self._semiring()
        A = check_matrix(s, A, square=True)
        self.interval_ = A.ndim == 3
        if self.interval_:
            self.closure_ = interval_closure(s, A, self.split)
        else:
            self.closure_ = mat_star(s, A, self.split)
        self.semiring_ = s
        self.A_ = A
        self.n_features_in_ = A.shape[0]
        return self

    def _check_rhs(self, B):
        check_is_fitted(self, "closure_")
        B = check_matrix(self.semiring_, B, name="B")
        if B.shape[0] != self.n_features_in_:
            raise ValueError(
                f"B has {B.shape[0]} rows but the fitted matrix is {self.n_features_in_}x{self.n_features_in_}"
            )
        return B

    def solve(self, B) -> BellmanSolution:
        """Full :class:`BellmanSolution` for right-hand side ``B``."""
        B = self._check_rhs(B)
        s, A, closure = self.semiring_, self.A_, self.closure_
        if self.interval_ or B.ndim == 3:
            A, closure, B = (x if x.ndim == 3 else np.stack([x, x], axis=-1) for x in (A, closure, B))
            # endpoint-wise product: the two bound systems are solved separately
            s = interval_extension(s)
        return solution_from_closure(s, A, B, closure)

    def predict(self, B) -> np.ndarray:
        """Least solution ``A* B``."""
        return self.solve(B).X

    def transform(self, B) -> np.ndarray:
        return self.predict(B)

    def fit_predict(self, A, B) -> np.ndarray:
        return self.fit(A).predict(B)

    def residual(self, X, B) -> np.ndarray:
        """``AX + B`` for a candidate ``X`` (equal to ``X`` at a solution)."""
        B = self._check_rhs(B)
        s = interval_extension(self.semiring_) if np.ndim(X) == 3 else self.semiring_
        A = self.A_
        if np.ndim(X) == 3 and A.ndim == 2:
            A = np.stack([A, A], axis=-1)
        if np.ndim(X) == 3 and B.ndim == 2:
            B = np.stack([B, B], axis=-1)
        return residual(s, A, s.asarray(X), B)
