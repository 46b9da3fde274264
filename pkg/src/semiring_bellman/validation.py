"""Input validation for matrices over a semiring."""

from __future__ import annotations

import numpy as np

from .interval import interval_extension
from .semiring import Semiring, resolve_semiring

__all__ = ["check_matrix", "check_semiring", "check_system"]


def check_semiring(semiring) -> Semiring:
    """Resolve a semiring string or pass a :class:`Semiring` through."""
    return resolve_semiring(semiring)


def check_matrix(s: Semiring, A, *, square: bool = False, interval: bool | None = None, name: str = "A"):
    """Validate a point or interval matrix over ``s``.

    Parameters
    ----------
    s : Semiring
        Scalar semiring of the entries (or of the interval bounds).
    A : array-like
        ``(m, n)`` point matrix or ``(m, n, 2)`` interval matrix.
    square : bool, default=False
    interval : bool or None, default=None
        Require an interval matrix (True), a point matrix (False) or accept
        either (None).
    name : str
        Used in error messages.

    Returns
    -------
    ndarray
        ``A`` converted to the semiring dtype.
    """
    raw = np.asarray(A)
    if raw.dtype == object:
        raise TypeError(f"{name} must be numeric, got an object array")
    if raw.ndim == 3 and raw.shape[-1] != 2:
        raise ValueError(f"{name}: interval matrices need a trailing axis of length 2, got {raw.shape}")
    if raw.ndim not in (2, 3):
        raise ValueError(f"{name} must be a 2-d matrix or 3-d interval matrix, got shape {raw.shape}")
    is_interval = raw.ndim == 3
    if interval is not None and interval != is_interval:
        kind = "an interval" if interval else "a point"
        raise ValueError(f"{name} must be {kind} matrix, got shape {raw.shape}")
    m, n = raw.shape[:2]
    if m == 0 or n == 0:
        raise ValueError(f"{name} must be nonempty, got shape {raw.shape}")
    if square and m != n:
        raise ValueError(f"{name} must be square, got {(m, n)}")
    if np.issubdtype(np.dtype(s.dtype), np.integer):
        if not np.issubdtype(raw.dtype, np.integer):
            with np.errstate(invalid="ignore"):
                if not np.all(np.isfinite(raw)) or np.any(raw != np.round(raw)):
                    raise ValueError(f"{name} has non-integer entries; {s.name} elements are 0..{s.one}")
    a = s.asarray(raw)
    target = interval_extension(s) if is_interval else s
    inside = np.asarray(target.in_carrier(a))
    if not inside.all():
        i, j = np.argwhere(~inside)[0]
        what = "an interval in" if is_interval else "an element of"
        raise ValueError(f"{name}[{i + 1},{j + 1}] = {a[i, j].tolist()} is not {what} {s.name}")
    return a


def check_system(s: Semiring, A, B):
    """Validate a Bellman system and align point/interval kinds.

    A point side is promoted to degenerate intervals when the other side is
    an interval matrix. Returns ``(A, B, is_interval)``.
    """
    A = check_matrix(s, A, square=True, name="A")
    B = check_matrix(s, B, name="B")
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"row counts disagree: A is {A.shape[:2]}, B is {B.shape[:2]}")
    is_interval = A.ndim == 3 or B.ndim == 3
    if is_interval:
        if A.ndim == 2:
            A = np.stack([A, A], axis=-1)
        if B.ndim == 2:
            B = np.stack([B, B], axis=-1)
    return A, B, is_interval
