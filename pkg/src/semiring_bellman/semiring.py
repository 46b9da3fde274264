"""Positive ordered semirings with a partial closure operation.

Elements live in numpy arrays and every operation broadcasts like a ufunc,
so the same descriptor drives scalar code, matrix kernels and batched
sampling. A descriptor may have a non-scalar element shape (intervals carry
a trailing axis of length 2, matrices carry ``(n, n)``); reductions over the
element axes are handled by :meth:`Semiring.eq` and :meth:`Semiring.leq`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

__all__ = [
    "UNDEFINED",
    "AxiomReport",
    "Semiring",
    "Violation",
    "check_axioms",
    "make_instance",
    "star",
]

KINDS = ("rplus", "maxplus", "maxplus_completed", "maxmin", "minplus", "boolean", "chain")

# relative/absolute tolerance used by rplus comparisons
RPLUS_RTOL = 1e-9
RPLUS_ATOL = 1e-12


class _Undefined:
    """Result of a closure evaluated outside its domain of definition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


def _out(r):
    # unwrap 0-d arrays into numpy scalars, leave everything else alone
    return r[()] if isinstance(r, np.ndarray) and r.ndim == 0 else r


@dataclass(frozen=True, eq=False)
class Semiring:
    """Descriptor of a positive semiring with partial closure.

    Parameters
    ----------
    name : str
        Identifier, also used when parsing semiring strings.
    add, mul : callable
        Elementwise, broadcasting implementations of the sum and product.
    zero, one : scalar or ndarray
        Neutral elements of ``add`` and ``mul``.
    order : callable
        Raw elementwise order predicate ``x <= y`` (no tolerance, no
        reduction over element axes).
    closure : callable
        ``x -> (values, defined)``; ``defined`` has the batch shape of ``x``
        and marks entries inside the domain of the star operation.
    reduce : callable
        ``(x, axis) -> sum`` of ``x`` along a (negative) axis.
    is_idempotent : bool
    rtol, atol : float
        Tolerances for equality and order tests; zero for exact instances.
    dtype : numpy dtype
    carrier : callable
        Elementwise membership test for the value domain.
    elements : tuple or None
        Full carrier for finite instances.
    elem_shape : tuple
        Shape of one element (``()`` for scalars).
    draw : callable or None
        ``(rng, lo, hi) -> sample`` returning random members between ``lo``
        and ``hi`` (used by the samplers).
    """

    name: str
    add: Callable
    mul: Callable
    zero: Any
    one: Any
    order: Callable
    closure: Callable
    reduce: Callable
    is_idempotent: bool
    rtol: float = 0.0
    atol: float = 0.0
    dtype: Any = np.float64
    carrier: Callable | None = None
    elements: tuple | None = None
    elem_shape: tuple = ()
    draw: Callable | None = field(default=None, repr=False)

    def __repr__(self):
        return f"Semiring({self.name!r})"

    @property
    def eq_tolerance(self) -> float:
        return self.rtol

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    @property
    def elem_ndim(self) -> int:
        return len(self.elem_shape)

    def with_tolerance(self, rtol: float, atol: float | None = None) -> "Semiring":
        """Return a copy comparing with the given tolerances."""
        if rtol < 0 or (atol is not None and atol < 0):
            raise ValueError("tolerances must be nonnegative")
        return dataclasses.replace(self, rtol=rtol, atol=self.atol if atol is None else atol)

    def asarray(self, x) -> np.ndarray:
        return np.asarray(x, dtype=self.dtype)

    def _reduce_elem(self, mask):
        if self.elem_ndim == 0:
            return _out(mask)
        return _out(np.all(mask, axis=tuple(range(-self.elem_ndim, 0))))

    def _close(self, x, y):
        x = self.asarray(x)
        y = self.asarray(y)
        if self.rtol == 0 and self.atol == 0:
            return x == y
        with np.errstate(invalid="ignore"):
            return np.isclose(x, y, rtol=self.rtol, atol=self.atol)

    def eq(self, x, y):
        """Equality within the instance tolerance, reduced over element axes."""
        return self._reduce_elem(self._close(x, y))

    def leq(self, x, y):
        """Order test ``x <= y`` within tolerance, reduced over element axes."""
        return self._reduce_elem(self.order(self.asarray(x), self.asarray(y)) | self._close(x, y))

    def sum(self, x, axis=-1):
        return _out(self.reduce(self.asarray(x), axis))

    def in_carrier(self, x):
        x = self.asarray(x)
        if self.carrier is None:
            return self._reduce_elem(np.ones(x.shape, dtype=bool))
        return self._reduce_elem(self.carrier(x))

    def star_masked(self, x):
        """Vectorised closure: returns ``(values, defined)``."""
        values, defined = self.closure(self.asarray(x))
        return _out(values), _out(np.asarray(defined, dtype=bool))

    def star(self, x):
        """Closure of a single element, or :data:`UNDEFINED`."""
        values, defined = self.star_masked(x)
        if np.ndim(defined) != 0:
            raise ValueError("star() takes a single element; use star_masked() for arrays")
        return values if defined else UNDEFINED

    def power(self, x, n: int):
        """``x`` multiplied by itself ``n`` times (``one`` for ``n == 0``)."""
        if n < 0:
            raise ValueError("power must be nonnegative")
        result = self.asarray(self.one)
        for _ in range(n):
            result = self.mul(result, x)
        return _out(self.asarray(result))


def star(s: Semiring, x):
    """Closure of ``x`` in ``s``; :data:`UNDEFINED` outside the domain."""
    return s.star(x)


# ---------------------------------------------------------------------------
# concrete instances


def _f(x):
    return np.asarray(x, dtype=np.float64)


def _max(x, y):
    return _out(np.maximum(_f(x), _f(y)))


def _min(x, y):
    return _out(np.minimum(_f(x), _f(y)))


def _plus(x, y):
    return _out(_f(x) + _f(y))


def _times(x, y):
    return _out(_f(x) * _f(y))


def _le(x, y):
    return x <= y


def _ge(x, y):
    return x >= y


def _reduce_sum(x, axis):
    return np.sum(x, axis=axis)


def _reduce_max(x, axis):
    return np.max(x, axis=axis)


def _reduce_min(x, axis):
    return np.min(x, axis=axis)


def _constant_closure(value, dtype=np.float64):
    def closure(x):
        return np.full(np.shape(x), value, dtype=dtype), np.ones(np.shape(x), dtype=bool)

    return closure


def _rplus_star(x):
    x = _f(x)
    defined = x < 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(defined, 1.0 / (1.0 - np.where(defined, x, 0.0)), np.nan)
    return values, defined


def _maxplus_star(x):
    x = _f(x)
    defined = x <= 0.0
    return np.where(defined, 0.0, np.nan), defined


def _maxplus_completed_star(x):
    x = _f(x)
    return np.where(x <= 0.0, 0.0, np.inf), np.ones(x.shape, dtype=bool)


def _minplus_star(x):
    x = _f(x)
    defined = x >= 0.0
    return np.where(defined, 0.0, np.nan), defined


def _maxplus_completed_mul(x, y):
    x, y = _f(x), _f(y)
    with np.errstate(invalid="ignore"):
        r = x + y
    # zero annihilates +inf instead of producing nan
    return _out(np.where((x == -np.inf) | (y == -np.inf), -np.inf, r))


_SPAN = 10.0


def _draw_real(rng, lo, hi):
    """Random reals between ``lo`` and ``hi`` (either numeric orientation).

    Finite ranges are sampled uniformly. An infinite endpoint is hit with
    probability 1/4, otherwise the draw is uniform over a window of width
    10 next to the finite endpoint.
    """
    lo, hi = np.broadcast_arrays(_f(lo), _f(hi))
    a = np.minimum(lo, hi)
    b = np.maximum(lo, hi)
    fa, fb = np.isfinite(a), np.isfinite(b)
    a_f = np.where(fa, a, np.where(fb, b - _SPAN, 0.0))
    b_f = np.where(fb, b, a_f + _SPAN)
    u = rng.uniform(a_f, b_f)
    pick = rng.random(a.shape)
    out = np.where(~fa & (pick < 0.25), a, u)
    out = np.where(~fb & (pick >= 0.75), b, out)
    return np.where(a == b, a, out)


def _draw_int(rng, lo, hi):
    lo, hi = np.broadcast_arrays(np.asarray(lo, dtype=np.int64), np.asarray(hi, dtype=np.int64))
    a = np.minimum(lo, hi)
    b = np.maximum(lo, hi)
    return rng.integers(a, b + 1)


def _rplus():
    return Semiring(
        name="rplus",
        add=_plus,
        mul=_times,
        zero=0.0,
        one=1.0,
        order=_le,
        closure=_rplus_star,
        reduce=_reduce_sum,
        is_idempotent=False,
        rtol=RPLUS_RTOL,
        atol=RPLUS_ATOL,
        carrier=lambda x: np.isfinite(x) & (x >= 0),
        draw=_draw_real,
    )


def _maxplus():
    return Semiring(
        name="maxplus",
        add=_max,
        mul=_plus,
        zero=-np.inf,
        one=0.0,
        order=_le,
        closure=_maxplus_star,
        reduce=_reduce_max,
        is_idempotent=True,
        carrier=lambda x: np.isfinite(x) | (x == -np.inf),
        draw=_draw_real,
    )


def _maxplus_completed():
    return Semiring(
        name="maxplus_completed",
        add=_max,
        mul=_maxplus_completed_mul,
        zero=-np.inf,
        one=0.0,
        order=_le,
        closure=_maxplus_completed_star,
        reduce=_reduce_max,
        is_idempotent=True,
        carrier=lambda x: ~np.isnan(x),
        draw=_draw_real,
    )


def _minplus():
    return Semiring(
        name="minplus",
        add=_min,
        mul=_plus,
        zero=np.inf,
        one=0.0,
        order=_ge,
        closure=_minplus_star,
        reduce=_reduce_min,
        is_idempotent=True,
        carrier=lambda x: np.isfinite(x) | (x == np.inf),
        draw=_draw_real,
    )


def _maxmin(a: float, b: float):
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise ValueError(f"maxmin needs a < b, got a={a}, b={b}")
    return Semiring(
        name=f"maxmin:{_fmt_param(a)}:{_fmt_param(b)}",
        add=_max,
        mul=_min,
        zero=a,
        one=b,
        order=_le,
        closure=_constant_closure(b),
        reduce=_reduce_max,
        is_idempotent=True,
        carrier=lambda x: (x >= a) & (x <= b),
        draw=_draw_real,
    )


def _chain(k: int, name: str | None = None):
    if int(k) != k or k < 2:
        raise ValueError(f"chain needs an integer k >= 2, got {k}")
    k = int(k)
    top = k - 1

    def add(x, y):
        return _out(np.maximum(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)))

    def mul(x, y):
        return _out(np.minimum(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)))

    def closure(x):
        # sup{1, x, x^2, ...} collapses to 1 + x because x*x <= x
        x = np.asarray(x, dtype=np.int64)
        return np.maximum(top, x), np.ones(x.shape, dtype=bool)

    return Semiring(
        name=name or f"chain:{k}",
        add=add,
        mul=mul,
        zero=0,
        one=top,
        order=_le,
        closure=closure,
        reduce=_reduce_max,
        is_idempotent=True,
        dtype=np.int64,
        carrier=lambda x: (x >= 0) & (x <= top),
        elements=tuple(range(k)),
        draw=_draw_int,
    )


def _fmt_param(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(int(v)) if v == int(v) else repr(v)


def _parse_param(token: str, kind: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"bad parameter {token!r} for semiring {kind!r}") from None


def make_instance(kind: str, *params) -> Semiring:
    """Build one of the shipped semirings.

    ``kind`` is one of ``rplus``, ``maxplus``, ``maxplus_completed``,
    ``maxmin``, ``minplus``, ``boolean`` or ``chain``. Parameters go either
    in ``params`` (``make_instance("maxmin", 0, 10)``) or in the string
    (``make_instance("maxmin:0:10")``, ``make_instance("chain:3")``).
    """
    if not isinstance(kind, str):
        raise TypeError(f"semiring kind must be a string, got {type(kind).__name__}")
    if ":" in kind:
        if params:
            raise ValueError("give parameters either in the string or as arguments, not both")
        kind, *tokens = kind.split(":")
        params = tuple(_parse_param(t, kind) for t in tokens)
    kind = kind.strip().lower()
    nullary = {
        "rplus": _rplus,
        "maxplus": _maxplus,
        "maxplus_completed": _maxplus_completed,
        "minplus": _minplus,
        "boolean": lambda: _chain(2, name="boolean"),
    }
    if kind in nullary:
        if params:
            raise ValueError(f"semiring {kind!r} takes no parameters")
        return nullary[kind]()
    if kind == "maxmin":
        if len(params) != 2:
            raise ValueError("maxmin needs two parameters a < b, e.g. 'maxmin:0:10'")
        return _maxmin(*params)
    if kind == "chain":
        if len(params) != 1:
            raise ValueError("chain needs one parameter k >= 2, e.g. 'chain:3'")
        return _chain(params[0])
    raise ValueError(f"unknown semiring kind {kind!r}; expected one of {', '.join(KINDS)}")


def resolve_semiring(semiring) -> Semiring:
    """Accept a :class:`Semiring` or a semiring string."""
    if isinstance(semiring, Semiring):
        return semiring
    return make_instance(semiring)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class Violation:
    axiom: str
    count: int
    witness: tuple

    def __str__(self):
        return f"{self.axiom}: {self.count} violation(s), e.g. {self.witness}"


@dataclass
class AxiomReport:
    semiring: str
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def violated_axioms(self) -> list:
        return [v.axiom for v in self.violations]

    def __str__(self):
        head = (
            f"semiring={self.semiring} axioms={len(self.checked)} "
            f"instances={sum(self.checked.values())} violations={len(self.violations)}"
        )
        return "\n".join([head] + [f"  {v}" for v in self.violations])


def _index_tuples(n: int, arity: int, limit: int, rng) -> np.ndarray:
    if n**arity <= limit:
        grids = np.meshgrid(*([np.arange(n)] * arity), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)
    return rng.integers(0, n, size=(limit, arity))


def check_axioms(
    s: Semiring,
    samples,
    *,
    max_pairs: int = 1_000_000,
    max_triples: int = 200_000,
    seed: int = 0,
) -> AxiomReport:
    """Check the positive-semiring and closure axioms on sample elements.

    Pairs and triples are enumerated exhaustively when their count fits the
    limits, otherwise a seeded random subset is used. Violations are
    returned as data.
    """
    x = s.asarray(samples)
    if x.ndim == s.elem_ndim:
        x = x[None]
    n = x.shape[0]
    if n == 0:
        raise ValueError("check_axioms needs at least one sample")
    rng = np.random.default_rng(seed)
    report = AxiomReport(semiring=s.name)
    zero, one = s.asarray(s.zero), s.asarray(s.one)

    def record(axiom, ok, witnesses):
        ok = np.asarray(ok, dtype=bool)
        report.checked[axiom] = report.checked.get(axiom, 0) + int(ok.size)
        bad = np.flatnonzero(~ok.ravel())
        if bad.size:
            w = witnesses[bad[0]]
            witness = tuple(_as_python(x[i]) for i in np.atleast_1d(w))
            report.violations.append(Violation(axiom, int(bad.size), witness))

    singles = np.arange(n)[:, None]
    pairs = _index_tuples(n, 2, max_pairs, rng)
    triples = _index_tuples(n, 3, max_triples, rng)
    a, b = x[pairs[:, 0]], x[pairs[:, 1]]
    p, q, r = x[triples[:, 0]], x[triples[:, 1]], x[triples[:, 2]]

    record("carrier", s.in_carrier(x), singles)
    if bool(s.eq(zero, one)):
        report.checked["zero_neq_one"] = 1
        report.violations.append(Violation("zero_neq_one", 1, ()))
    else:
        report.checked["zero_neq_one"] = 1

    with np.errstate(invalid="ignore", over="ignore"):
        # semiring laws
        record("add_commutativity", s.eq(s.add(a, b), s.add(b, a)), pairs)
        record("add_associativity", s.eq(s.add(s.add(p, q), r), s.add(p, s.add(q, r))), triples)
        record("mul_associativity", s.eq(s.mul(s.mul(p, q), r), s.mul(p, s.mul(q, r))), triples)
        record(
            "left_distributivity",
            s.eq(s.mul(p, s.add(q, r)), s.add(s.mul(p, q), s.mul(p, r))),
            triples,
        )
        record(
            "right_distributivity",
            s.eq(s.mul(s.add(q, r), p), s.add(s.mul(q, p), s.mul(r, p))),
            triples,
        )
        record("add_identity", s.eq(s.add(zero, x), x), singles)
        record("mul_left_identity", s.eq(s.mul(one, x), x), singles)
        record("mul_right_identity", s.eq(s.mul(x, one), x), singles)
        record("left_annihilation", s.eq(s.mul(zero, x), zero), singles)
        record("right_annihilation", s.eq(s.mul(x, zero), zero), singles)

        # order
        record("zero_least", s.leq(zero, x), singles)
        record("order_reflexive", s.leq(x, x), singles)
        le_ab, le_ba = s.leq(a, b), s.leq(b, a)
        record("order_antisymmetric", ~(le_ab & le_ba) | s.eq(a, b), pairs)
        le_pq, le_qr = s.leq(p, q), s.leq(q, r)
        record("order_transitive", ~(le_pq & le_qr) | s.leq(p, r), triples)
        record("add_monotone", ~le_pq | s.leq(s.add(p, r), s.add(q, r)), triples)
        record("mul_monotone_right", ~le_pq | s.leq(s.mul(p, r), s.mul(q, r)), triples)
        record("mul_monotone_left", ~le_pq | s.leq(s.mul(r, p), s.mul(r, q)), triples)

        if s.is_idempotent:
            ab = s.add(a, b)
            record("add_idempotent", s.eq(s.add(x, x), x), singles)
            record("sum_upper_bound", s.leq(a, ab) & s.leq(b, ab), pairs)
            record(
                "sum_least_upper_bound",
                ~(s.leq(p, r) & s.leq(q, r)) | s.leq(s.add(p, q), r),
                triples,
            )

        # closure
        zs, zdef = s.star_masked(zero)
        report.checked["zero_star"] = 1
        if not (np.all(zdef) and s.eq(zs, one)):
            report.violations.append(Violation("zero_star", 1, (_as_python(zero),)))
        xs, xdef = s.star_masked(x)
        xs = s.asarray(xs)
        xdef = np.asarray(xdef, dtype=bool)
        dom = np.flatnonzero(xdef)
        if dom.size:
            xd, sd = x[dom], xs[dom]
            record("star_right_unfold", s.eq(sd, s.add(one, s.mul(sd, xd))), dom[:, None])
            record("star_left_unfold", s.eq(sd, s.add(one, s.mul(xd, sd))), dom[:, None])
        both = xdef[pairs[:, 0]] & xdef[pairs[:, 1]]
        sa, sb = xs[pairs[:, 0]], xs[pairs[:, 1]]
        record("star_monotone", ~(both & le_ab) | s.leq(sa, sb), pairs)

    return report


def _as_python(v):
    v = np.asarray(v)
    return v.item() if v.ndim == 0 else v.tolist()
