"""Slow, independent reference computations.

Nothing here calls the matrix kernels of :mod:`semiring_bellman.matrix`:
products are explicit loops over the inner index, the real-number closure
goes through LU factorisation, and solution sets are enumerated. Agreement
with the production paths is therefore evidence rather than tautology.
"""

from __future__ import annotations

import hashlib
import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .matrix import UndefinedClosureError
from .semiring import UNDEFINED, Semiring

__all__ = [
    "DivergentError",
    "OracleReport",
    "discrepancy",
    "enumerate_solutions",
    "fw_closure",
    "gauss_closure",
    "truncated_series",
]

PIVOT_EPS = 1e-12
NEGATIVE_EPS = 1e-9


class DivergentError(ArithmeticError):
    """``(I - A)^-1`` does not exist or is not a nonnegative matrix."""


@dataclass
class OracleReport:
    subject: str
    instances_checked: int = 0
    max_discrepancy: float | str = "exact"
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, key, expected, got, disc: float, passed: bool, exact: bool):
        """Record one comparison."""
        self.instances_checked += 1
        if not exact or disc != 0:
            prev = 0.0 if self.max_discrepancy == "exact" else self.max_discrepancy
            self.max_discrepancy = max(prev, float(disc))
        if not passed:
            self.failures.append((digest(key), expected, got))

    def __str__(self):
        disc = self.max_discrepancy
        disc = disc if isinstance(disc, str) else f"{disc:.3g}"
        return (
            f"subject={self.subject} checked={self.instances_checked} "
            f"max_disc={disc} failures={len(self.failures)}"
        )


def digest(a) -> str:
    """Short stable fingerprint of an array (or tuple of arrays)."""
    h = hashlib.sha1()
    for part in a if isinstance(a, tuple) else (a,):
        part = np.ascontiguousarray(part)
        h.update(str(part.shape).encode())
        h.update(part.tobytes())
    return h.hexdigest()[:12]


def discrepancy(X, Y) -> float:
    """Largest absolute entry difference; infinite if infinities disagree."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != Y.shape:
        return float("inf")
    same = X == Y
    with np.errstate(invalid="ignore"):
        diff = np.where(same, 0.0, np.abs(X - Y))
    diff = np.where(np.isnan(diff), np.inf, diff)
    return float(diff.max()) if diff.size else 0.0


def _product(s: Semiring, A, B):
    # sum over the inner index, one rank-one term at a time
    n_inner = A.shape[1]
    C = np.broadcast_to(s.asarray(s.zero), (A.shape[0], B.shape[1]) + s.elem_shape)
    for k in range(n_inner):
        C = s.add(C, s.mul(A[:, k][:, None], B[k][None, :]))
    return s.asarray(C)


def _unit(s: Semiring, n: int):
    E = np.broadcast_to(s.asarray(s.zero), (n, n) + s.elem_shape).copy()
    for i in range(n):
        E[i, i] = s.one
    return E


def truncated_series(s: Semiring, A, k: int) -> np.ndarray:
    """``E + A + A^2 + ... + A^k`` evaluated by Horner's rule."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    A = s.asarray(A)
    E = _unit(s, A.shape[0])
    S = E
    for _ in range(k):
        S = s.asarray(s.add(E, _product(s, A, S)))
    return S


def gauss_closure(A) -> np.ndarray:
    """``(I - A)^-1`` over the nonnegative reals via LU with partial pivoting.

    Raises
    ------
    DivergentError
        If a pivot is smaller than 1e-12 in magnitude or the inverse has an
        entry below -1e-9, either of which means the closure is undefined.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"closure needs a square matrix, got {A.shape}")
    with warnings.catch_warnings():
        # singular pivots are reported below as divergence
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(np.eye(n) - A, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if np.any(pivots < PIVOT_EPS):
        raise DivergentError(f"pivot of magnitude {pivots.min():.3g} in I - A")
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(n))
    if np.any(inv < -NEGATIVE_EPS):
        raise DivergentError(f"(I - A)^-1 has a negative entry {inv.min():.3g}")
    return np.maximum(inv, 0.0)


def fw_closure(s: Semiring, A) -> np.ndarray:
    """Floyd-Warshall-Kleene closure over an idempotent semiring.

    For each pivot ``k``: ``a_ij <- a_ij + a_ik (a_kk)* a_kj``, then ``E`` is
    added. Raises :class:`UndefinedClosureError` on an undefined pivot star.
    """
    if not s.is_idempotent:
        raise ValueError(f"fw_closure needs an idempotent semiring, got {s.name}")
    A = s.asarray(A).copy()
    n = A.shape[0]
    for k in range(n):
        c = s.star(A[k, k])
        if c is UNDEFINED:
            raise UndefinedClosureError(k + 1, k + 1, ("pivot",))
        col = s.asarray(s.mul(A[:, k], c))
        A = s.asarray(s.add(A, s.mul(col[:, None], A[k][None, :])))
    return s.asarray(s.add(_unit(s, n), A))


def enumerate_solutions(s: Semiring, A, B, max_candidates: int = 10**6) -> list:
    """Every ``X`` over a finite carrier with ``X = AX + B`` exactly."""
    if not s.is_finite:
        raise ValueError(f"enumeration needs a finite carrier, got {s.name}")
    A, B = s.asarray(A), s.asarray(B)
    n, cols = B.shape[0], B.shape[1]
    if A.shape != (n, n):
        raise ValueError(f"A must be {(n, n)} to match B {B.shape}, got {A.shape}")
    cells = n * cols
    size = len(s.elements) ** cells
    if size > max_candidates:
        raise ValueError(
            f"{size} candidate matrices exceed the enumeration bound {max_candidates}"
        )
    cand = np.array(list(itertools.product(s.elements, repeat=cells)), dtype=s.dtype)
    X = cand.reshape(size, n, cols)
    # (AX)[c, i, j] = sum_k A[i, k] X[c, k, j]
    AX = s.reduce(s.asarray(s.mul(A[None, :, :, None], X[:, None, :, :])), -2)
    rhs = s.asarray(s.add(AX, B[None]))
    hit = np.all(rhs == X, axis=(1, 2))
    return [X[i] for i in np.flatnonzero(hit)]
