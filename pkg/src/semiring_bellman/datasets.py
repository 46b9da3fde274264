"""Random matrices and systems for the shipped semirings.

Real idempotent carriers draw dyadic (or integer) values so that sums are
exact in floating point and results can be compared bit for bit.
"""

from __future__ import annotations

import numpy as np

from .interval import stack_bounds
from .semiring import Semiring

__all__ = [
    "make_closable_matrix",
    "make_elements",
    "make_interval_system",
    "make_matrix",
]


def _rng(random_state):
    return random_state if isinstance(random_state, np.random.Generator) else np.random.default_rng(random_state)


def _kind(s: Semiring) -> str:
    return s.name.split(":")[0]


def make_elements(s: Semiring, size: int = 1000, random_state=None) -> np.ndarray:
    """Sample carrier elements, always including zero, one and any infinities.

    Finite carriers return the whole carrier regardless of ``size``.
    """
    rng = _rng(random_state)
    if s.is_finite:
        return s.asarray(s.elements)
    kind = _kind(s)
    special = [s.zero, s.one]
    if kind == "rplus":
        special += [0.5, 0.9, 0.999, 1.5, 2.0]
        body = np.concatenate([rng.uniform(0, 1, size // 2), rng.uniform(0, 4, size - size // 2)])
    elif kind == "maxmin":
        a, b = float(s.zero), float(s.one)
        lo = a if np.isfinite(a) else -64.0
        hi = b if np.isfinite(b) else 64.0
        body = rng.uniform(lo, hi, size)
    else:
        if kind == "maxplus_completed":
            special.append(np.inf)
        body = rng.integers(-64, 65, size) / 4.0
    out = np.concatenate([s.asarray(special), body])[:max(size, len(special))]
    return s.asarray(out)


def make_matrix(s: Semiring, shape, random_state=None, density: float = 0.7) -> np.ndarray:
    """Random matrix of carrier elements; entries off the support are zero."""
    rng = _rng(random_state)
    shape = tuple(shape)
    if s.is_finite:
        return rng.integers(0, len(s.elements), shape).astype(s.dtype)
    kind = _kind(s)
    if kind == "rplus":
        vals = rng.uniform(0, 2, shape)
    elif kind == "maxmin":
        a, b = float(s.zero), float(s.one)
        vals = rng.uniform(a if np.isfinite(a) else -64.0, b if np.isfinite(b) else 64.0, shape)
    elif kind == "minplus":
        vals = rng.integers(0, 33, shape).astype(float)
    else:
        vals = rng.integers(-32, 33, shape).astype(float)
    mask = rng.random(shape) < density
    return s.asarray(np.where(mask, vals, s.zero))


def make_closable_matrix(s: Semiring, n: int, random_state=None, density: float = 0.7) -> np.ndarray:
    """Random square matrix whose closure is defined.

    - rplus: nonnegative with every row sum at most 0.9;
    - maxplus: integer weights ``w_ij + p_i - p_j`` with ``w <= 0``, so every
      cycle has nonpositive weight;
    - minplus: nonnegative integer weights;
    - other instances have a total closure and use :func:`make_matrix`.
    """
    rng = _rng(random_state)
    kind = _kind(s)
    mask = rng.random((n, n)) < density
    if kind == "rplus":
        A = np.where(mask, rng.random((n, n)), 0.0)
        sums = A.sum(axis=1)
        target = 0.9 * rng.uniform(0.1, 1.0, n)
        scale = np.where(sums > 0, target / np.where(sums > 0, sums, 1.0), 0.0)
        return A * scale[:, None]
    if kind == "maxplus":
        w = -rng.integers(0, 10, (n, n)).astype(float)
        p = rng.integers(-5, 6, n).astype(float)
        A = w + p[:, None] - p[None, :]
        return np.where(mask, A, -np.inf)
    if kind == "minplus":
        return np.where(mask, rng.integers(0, 10, (n, n)).astype(float), np.inf)
    return make_matrix(s, (n, n), rng, density)


def make_interval_system(s: Semiring, n: int, cols: int = 1, random_state=None):
    """Random interval system ``(A, B)`` whose upper closure is defined.

    ``U(A)`` comes from :func:`make_closable_matrix` and ``L(A)`` is drawn
    between zero and ``U(A)``, so every point matrix inside ``A`` is
    closable as well. Returns arrays of shape ``(n, n, 2)`` and
    ``(n, cols, 2)``.
    """
    rng = _rng(random_state)
    UA = make_closable_matrix(s, n, rng)
    LA = s.asarray(s.draw(rng, np.full(UA.shape, s.zero), UA))
    UB = make_matrix(s, (n, cols), rng, density=0.9)
    if _kind(s) == "rplus":
        UB = rng.uniform(0, 2, (n, cols))
    LB = s.asarray(s.draw(rng, np.full(UB.shape, s.zero), UB))
    return stack_bounds(LA, UA), stack_bounds(LB, UB)
