"""Weak interval extension of a positive semiring.

An interval ``[lo, hi]`` with ``lo <= hi`` stands for every element between
its bounds. Sums, products and closures act on the two bounds separately,
which by monotonicity of the operations encloses every pointwise result and
is attained by the bounds themselves.

Array layout: an interval-valued array has a trailing axis of length 2 holding
``(lo, hi)``; :func:`interval_extension` returns a :class:`Semiring` over that
layout so matrix code runs on it unchanged.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Any, NamedTuple

import numpy as np

from .semiring import UNDEFINED, Semiring, _out

__all__ = [
    "Interval",
    "contains",
    "interval",
    "interval_extension",
    "iv_add",
    "iv_leq",
    "iv_mul",
    "iv_star",
    "lower",
    "upper",
    "stack_bounds",
]


class Interval(NamedTuple):
    lo: Any
    hi: Any

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


def interval(s: Semiring, lo, hi=None) -> Interval:
    """Validated interval ``[lo, hi]`` in ``s``; ``interval(s, v)`` is ``[v, v]``.

    Raises ``ValueError`` if a bound lies outside the carrier or if
    ``lo <= hi`` fails (bounds are never swapped).
    """
    if hi is None:
        hi = lo
    lo, hi = s.asarray(lo)[()], s.asarray(hi)[()]
    for name, v in (("lower", lo), ("upper", hi)):
        if not s.in_carrier(v):
            raise ValueError(f"{name} bound {v!r} is not in the carrier of {s.name}")
    if not s.leq(lo, hi):
        if s.leq(hi, lo):
            raise ValueError(f"lower bound {lo!r} exceeds upper bound {hi!r} in {s.name}")
        raise ValueError(f"bounds {lo!r} and {hi!r} are incomparable in {s.name}")
    return Interval(lo, hi)


def iv_add(s: Semiring, x: Interval, y: Interval) -> Interval:
    return Interval(s.add(x.lo, y.lo), s.add(x.hi, y.hi))


def iv_mul(s: Semiring, x: Interval, y: Interval) -> Interval:
    return Interval(s.mul(x.lo, y.lo), s.mul(x.hi, y.hi))


def iv_star(s: Semiring, x: Interval):
    """``[lo*, hi*]``, or :data:`UNDEFINED` if either bound's star is."""
    lo, hi = s.star(x.lo), s.star(x.hi)
    if lo is UNDEFINED or hi is UNDEFINED:
        return UNDEFINED
    return Interval(lo, hi)


def iv_leq(s: Semiring, x: Interval, y: Interval) -> bool:
    return bool(s.leq(x.lo, y.lo)) and bool(s.leq(x.hi, y.hi))


def contains(s: Semiring, x: Interval, p) -> bool:
    """Whether ``p`` lies in ``x``."""
    return bool(s.leq(x.lo, p)) and bool(s.leq(p, x.hi))


def lower(a) -> np.ndarray:
    return np.asarray(a)[..., 0]


def upper(a) -> np.ndarray:
    return np.asarray(a)[..., 1]


def stack_bounds(lo, hi) -> np.ndarray:
    """Pack lower and upper arrays into the interval array layout."""
    lo, hi = np.asarray(lo), np.asarray(hi)
    if lo.shape != hi.shape:
        raise ValueError(f"bound shapes differ: {lo.shape} vs {hi.shape}")
    return np.stack([lo, hi], axis=-1)


def interval_extension(s: Semiring) -> Semiring:
    """The semiring of closed intervals of ``s`` with endpoint-wise operations.

    Zero is ``[0, 0]`` and one is ``[1, 1]``. The closure is defined only
    where both endpoint closures are.
    """
    if s.elem_ndim:
        raise ValueError("interval extension is only built over scalar semirings")

    def closure(x):
        values, defined = s.closure(x)
        return values, np.all(np.asarray(defined, dtype=bool), axis=-1)

    def carrier(x):
        inside = np.asarray(s.carrier(x)) if s.carrier is not None else np.ones(x.shape, bool)
        ordered = s.order(x[..., 0], x[..., 1]) | s._close(x[..., 0], x[..., 1])
        # broadcast the ordering verdict back onto both endpoints
        return inside & ordered[..., None]

    def draw(rng, lo, hi):
        # random intervals nested between two intervals
        lo, hi = np.broadcast_arrays(np.asarray(lo), np.asarray(hi))
        a = s.draw(rng, lo[..., 0], hi[..., 0])
        b = s.draw(rng, np.where(s.order(a, lo[..., 1]), lo[..., 1], a), hi[..., 1])
        return np.stack([a, b], axis=-1)

    elements = None
    if s.is_finite:
        elements = tuple(
            (lo, hi) for lo, hi in itertools.product(s.elements, repeat=2) if s.leq(lo, hi)
        )

    return dataclasses.replace(
        s,
        name=f"I({s.name})",
        zero=np.array([s.zero, s.zero], dtype=s.dtype),
        one=np.array([s.one, s.one], dtype=s.dtype),
        closure=closure,
        carrier=carrier,
        elements=elements,
        elem_shape=(2,),
        draw=draw if s.draw is not None else None,
    )


def degenerate(a) -> np.ndarray:
    """Promote a point array to degenerate intervals ``[v, v]``."""
    a = np.asarray(a)
    return np.stack([a, a], axis=-1)


def as_interval_scalar(s: Semiring, v) -> Interval:
    v = s.asarray(v)
    return Interval(_out(v[..., 0]), _out(v[..., 1]))
