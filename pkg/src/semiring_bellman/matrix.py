"""Dense matrices over a semiring and the escalator closure.

A matrix over ``s`` is an ndarray of shape ``(m, n) + s.elem_shape``; interval
matrices therefore have shape ``(m, n, 2)``. Kernels also accept leading batch
axes, which :func:`mat_star_batch` uses to close many matrices at once.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .interval import stack_bounds
from .semiring import Semiring

__all__ = [
    "MatrixInterval",
    "OpCounter",
    "UndefinedClosureError",
    "from_matrix_interval",
    "identity",
    "interval_closure",
    "mat_add",
    "mat_eq",
    "mat_leq",
    "mat_mul",
    "mat_star",
    "mat_star_batch",
    "matrix_semiring",
    "to_matrix_interval",
    "zeros",
]

SPLITS = ("scalar_pivot", "balanced")


class UndefinedClosureError(ArithmeticError):
    """A scalar star met during the closure recursion is undefined.

    ``row`` and ``col`` are 1-based coordinates in the original matrix,
    ``path`` lists the recursion blocks leading to the failing pivot and
    ``endpoint`` names the interval bound (``"lower"``/``"upper"``) when the
    closure was computed bound by bound.
    """

    def __init__(self, row, col, path=(), endpoint=None):
        self.row = row
        self.col = col
        self.path = tuple(path)
        self.endpoint = endpoint
        where = f"({row},{col})"
        if endpoint:
            where = f"{endpoint} bound at {where}"
        route = "/".join(self.path) or "A"
        super().__init__(f"closure undefined at {where} (recursion path {route})")

    def with_endpoint(self, endpoint):
        return UndefinedClosureError(self.row, self.col, self.path, endpoint)


@dataclass
class OpCounter:
    """Tally of scalar semiring operations."""

    add: int = 0
    mul: int = 0
    star: int = 0

    @property
    def total(self) -> int:
        return self.add + self.mul + self.star


class MatrixInterval(NamedTuple):
    lo: np.ndarray
    hi: np.ndarray


def zeros(s: Semiring, m: int, n: int | None = None) -> np.ndarray:
    n = m if n is None else n
    return np.broadcast_to(s.asarray(s.zero), (m, n) + s.elem_shape).copy()


def identity(s: Semiring, n: int) -> np.ndarray:
    e = zeros(s, n)
    e[np.arange(n), np.arange(n)] = s.asarray(s.one)
    return e


def _shape(s: Semiring, a: np.ndarray) -> tuple:
    return a.shape[: a.ndim - s.elem_ndim]


def _as_matrix(s: Semiring, a, name="A") -> np.ndarray:
    a = s.asarray(a)
    if a.ndim != 2 + s.elem_ndim or a.shape[a.ndim - s.elem_ndim :] != s.elem_shape:
        raise ValueError(
            f"{name} must have shape (m, n){' + ' + str(s.elem_shape) if s.elem_ndim else ''} "
            f"over {s.name}, got {a.shape}"
        )
    return a


def _add(s, a, b):
    return s.asarray(s.add(a, b))


def _mul(s, a, b):
    """Semiring matrix product on the last two matrix axes, batch-broadcasting."""
    e = s.elem_ndim
    prod = s.mul(np.expand_dims(a, -(e + 1)), np.expand_dims(b, -(e + 3)))
    return s.asarray(s.reduce(s.asarray(prod), -(e + 2)))


def _count_mul(counter, l, m, n):
    if counter is not None:
        counter.mul += l * m * n
        counter.add += l * (m - 1) * n


def _count_add(counter, m, n):
    if counter is not None:
        counter.add += m * n


def mat_add(s: Semiring, A, B, counter: OpCounter | None = None) -> np.ndarray:
    """Entrywise sum of two matrices of equal shape."""
    A, B = _as_matrix(s, A), _as_matrix(s, B, "B")
    if _shape(s, A) != _shape(s, B):
        raise ValueError(f"shape mismatch in sum: {_shape(s, A)} vs {_shape(s, B)}")
    _count_add(counter, *_shape(s, A))
    return _add(s, A, B)


def mat_mul(s: Semiring, A, B, counter: OpCounter | None = None) -> np.ndarray:
    """Product ``(AB)_ij = sum_k A_ik B_kj`` over ``s``."""
    A, B = _as_matrix(s, A), _as_matrix(s, B, "B")
    (l, m), (m2, n) = _shape(s, A), _shape(s, B)
    if m != m2:
        raise ValueError(f"inner dimensions disagree in product: {(l, m)} @ {(m2, n)}")
    _count_mul(counter, l, m, n)
    return _mul(s, A, B)


def mat_leq(s: Semiring, A, B) -> bool:
    """Componentwise order ``A <= B``."""
    A, B = _as_matrix(s, A), _as_matrix(s, B, "B")
    if _shape(s, A) != _shape(s, B):
        raise ValueError(f"shape mismatch in comparison: {_shape(s, A)} vs {_shape(s, B)}")
    return bool(np.all(s.leq(A, B)))


def mat_eq(s: Semiring, A, B) -> bool:
    A, B = _as_matrix(s, A), _as_matrix(s, B, "B")
    if _shape(s, A) != _shape(s, B):
        raise ValueError(f"shape mismatch in comparison: {_shape(s, A)} vs {_shape(s, B)}")
    return bool(np.all(s.eq(A, B)))


# ---------------------------------------------------------------------------
# escalator closure


def _block(e, a, rows, cols):
    return a[(Ellipsis, rows, cols) + (slice(None),) * e]


def _escalator(s, A, split, offset, path, counter, failure):
    """Closure of the trailing square block of ``A`` (batch axes allowed).

    Returns ``(closure, defined)``. ``failure`` collects the first undefined
    pivot as ``(index, path)`` with ``index`` 0-based in the original matrix.
    """
    e = s.elem_ndim
    n = A.shape[A.ndim - e - 1]
    if n == 1:
        if counter is not None:
            counter.star += 1
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            values, defined = s.closure(_block(e, A, 0, 0))
        defined = np.asarray(defined, dtype=bool)
        if failure is not None and not failure and not defined.all():
            failure.append((offset, path))
        values = s.asarray(values)
        return np.expand_dims(values, (-(e + 2), -(e + 1))), defined

    k = 1 if split == "scalar_pivot" else n // 2
    head, tail = slice(0, k), slice(k, n)
    A11, A12 = _block(e, A, head, head), _block(e, A, head, tail)
    A21, A22 = _block(e, A, tail, head), _block(e, A, tail, tail)

    S11, ok1 = _escalator(s, A11, split, offset, path + ("A11",), counter, failure)
    with np.errstate(invalid="ignore", over="ignore"):
        P = _mul(s, S11, A12)  # A11* A12
        Q = _mul(s, A21, S11)  # A21 A11*
        D = _add(s, A22, _mul(s, A21, P))
    _count_mul(counter, k, k, n - k)
    _count_mul(counter, n - k, k, k)
    _count_mul(counter, n - k, k, n - k)
    _count_add(counter, n - k, n - k)

    Ds, ok2 = _escalator(s, D, split, offset + k, path + ("D",), counter, failure)
    with np.errstate(invalid="ignore", over="ignore"):
        top_right = _mul(s, P, Ds)
        bottom_left = _mul(s, Ds, Q)
        top_left = _add(s, S11, _mul(s, top_right, Q))
    _count_mul(counter, k, n - k, n - k)
    _count_mul(counter, n - k, n - k, k)
    _count_mul(counter, k, n - k, k)
    _count_add(counter, k, k)

    top = np.concatenate([top_left, top_right], axis=-(e + 1))
    bottom = np.concatenate([bottom_left, Ds], axis=-(e + 1))
    return np.concatenate([top, bottom], axis=-(e + 2)), ok1 & ok2


def _check_split(split):
    if split not in SPLITS:
        raise ValueError(f"split must be one of {SPLITS}, got {split!r}")


def mat_star_batch(s: Semiring, A, split: str = "scalar_pivot", counter: OpCounter | None = None):
    """Close a stack of square matrices.

    Returns ``(closures, defined)`` where ``defined`` has the batch shape;
    closures of undefined members hold unspecified values.
    """
    _check_split(split)
    A = s.asarray(A)
    e = s.elem_ndim
    if A.ndim < 2 + e or A.shape[A.ndim - e - 2] != A.shape[A.ndim - e - 1]:
        raise ValueError(f"closure needs square matrices, got shape {A.shape}")
    return _escalator(s, A, split, 0, (), counter, None)


def mat_star(s: Semiring, A, split: str = "scalar_pivot", counter: OpCounter | None = None) -> np.ndarray:
    """Escalator closure ``A*`` of a square matrix.

    The matrix is split into blocks ``[[A11, A12], [A21, A22]]`` with ``A11``
    of size ``k`` (``k = 1`` for ``scalar_pivot``, ``k = n // 2`` for
    ``balanced``) and closed recursively through
    ``D = A22 + A21 A11* A12``. The cost is cubic in ``n``.

    Raises
    ------
    UndefinedClosureError
        If a scalar star along the recursion is undefined.
    """
    _check_split(split)
    A = _as_matrix(s, A)
    m, n = _shape(s, A)
    if m != n:
        raise ValueError(f"closure needs a square matrix, got {(m, n)}")
    failure = []
    closure, defined = _escalator(s, A, split, 0, (), counter, failure)
    if not np.all(defined):
        index, path = failure[0]
        raise UndefinedClosureError(index + 1, index + 1, path)
    return closure


def interval_closure(s: Semiring, A, split: str = "scalar_pivot", counter: OpCounter | None = None) -> np.ndarray:
    """Closure of an interval matrix computed bound by bound.

    ``A`` has shape ``(n, n, 2)`` over the scalar semiring ``s``. The error
    raised for a divergent bound names that bound.
    """
    M = to_matrix_interval(A)
    bounds = []
    for endpoint, part in (("lower", M.lo), ("upper", M.hi)):
        try:
            bounds.append(mat_star(s, part, split, counter))
        except UndefinedClosureError as exc:
            raise exc.with_endpoint(endpoint) from None
    return from_matrix_interval(MatrixInterval(*bounds))


def to_matrix_interval(A) -> MatrixInterval:
    """Split a matrix of intervals into its lower and upper matrices."""
    A = np.asarray(A)
    if A.ndim < 1 or A.shape[-1] != 2:
        raise ValueError(f"interval matrices carry a trailing axis of length 2, got {A.shape}")
    return MatrixInterval(A[..., 0].copy(), A[..., 1].copy())


def from_matrix_interval(M: MatrixInterval) -> np.ndarray:
    return stack_bounds(M.lo, M.hi)


def matrix_semiring(s: Semiring, n: int, split: str = "scalar_pivot") -> Semiring:
    """The semiring of ``n x n`` matrices over ``s`` (zero ``O``, unit ``E``).

    Elements have shape ``(n, n) + s.elem_shape``; the product is the matrix
    product and the closure is :func:`mat_star_batch`.
    """
    e = s.elem_ndim

    def mul(a, b):
        return _mul(s, s.asarray(a), s.asarray(b))

    def closure(a):
        return mat_star_batch(s, a, split)

    def carrier(a):
        if s.carrier is None:
            return np.ones(a.shape, dtype=bool)
        return s.carrier(a)

    return dataclasses.replace(
        s,
        name=f"Mat{n}({s.name})",
        mul=mul,
        zero=zeros(s, n),
        one=identity(s, n),
        closure=closure,
        carrier=carrier,
        elements=None,
        elem_shape=(n, n) + s.elem_shape,
        draw=None,
    )

