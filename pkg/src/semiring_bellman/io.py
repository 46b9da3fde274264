"""Plain-text matrix format.

::

    m n
    a11 a12 ... a1n
    ...
    am1 am2 ... amn

Entries are scalars (``3.5``, ``-inf``, ``inf``) or intervals ``[lo,hi]``
without interior spaces. If any entry is an interval, scalars are promoted to
degenerate intervals and the parsed array gains a trailing bound axis.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .semiring import Semiring

__all__ = ["MatrixFormatError", "format_matrix", "parse_interval", "parse_matrix", "read_matrix"]

_INTERVAL = re.compile(r"^\[([^,\[\]]+),([^,\[\]]+)\]$")


class MatrixFormatError(ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
        prefix = ": ".join(p for p in (source, where) if p)
        super().__init__(f"{prefix}: {message}" if prefix else message)


def _scalar(token: str) -> float:
    t = token.strip().lower()
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    if t in ("-inf", "-infinity"):
        return -math.inf
    value = float(t)
    if math.isnan(value):
        raise ValueError("nan is not a semiring element")
    return value


def parse_interval(token: str) -> tuple[float, float]:
    """Parse ``[lo,hi]`` or a bare scalar ``v`` (meaning ``[v,v]``)."""
    m = _INTERVAL.match(token)
    if m:
        return _scalar(m.group(1)), _scalar(m.group(2))
    v = _scalar(token)
    return v, v


def parse_matrix(text: str, source: str | None = None):
    """Parse matrix text.

    Returns
    -------
    values : ndarray
        Shape ``(m, n)`` for scalar files, ``(m, n, 2)`` if any entry is an
        interval.
    is_interval : bool
    """
    lines = [(no, ln) for no, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise MatrixFormatError("empty input, expected a header 'm n'", source=source)
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"header must be 'm n', got {header.strip()!r}", no, 1, source)
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"header must hold two integers, got {header.strip()!r}", no, 1, source) from None
    if m < 1 or n < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {m} {n}", no, 1, source)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else no
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}", last, None, source)

    lo = np.empty((m, n))
    hi = np.empty((m, n))
    any_interval = False
    for i, (no, row) in enumerate(body):
        tokens = [(mt.start() + 1, mt.group()) for mt in re.finditer(r"\S+", row)]
        if len(tokens) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(tokens)}", no, None, source)
        for j, (col, tok) in enumerate(tokens):
            try:
                a, b = parse_interval(tok)
            except ValueError:
                raise MatrixFormatError(f"bad entry {tok!r}", no, col, source) from None
            any_interval |= tok.startswith("[")
            lo[i, j], hi[i, j] = a, b
    if any_interval:
        return np.stack([lo, hi], axis=-1), True
    return lo, False


def read_matrix(path) -> tuple[np.ndarray, bool]:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), source=str(path))


def _fmt(v, integral: bool) -> str:
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if integral:
        return str(int(v))
    if v == 0:
        v = 0.0  # drop the sign of -0.0
    return f"{v:.17g}"


def format_matrix(a, s: Semiring | None = None) -> str:
    """Render a scalar ``(m, n)`` or interval ``(m, n, 2)`` matrix.

    Floats print with 17 significant digits so they parse back bit-exact.
    """
    a = np.asarray(a)
    integral = s is not None and np.issubdtype(np.dtype(s.dtype), np.integer)
    if a.ndim == 3:
        if a.shape[-1] != 2:
            raise ValueError(f"interval matrices need a trailing axis of length 2, got {a.shape}")
        cells = [
            [f"[{_fmt(a[i, j, 0], integral)},{_fmt(a[i, j, 1], integral)}]" for j in range(a.shape[1])]
            for i in range(a.shape[0])
        ]
    elif a.ndim == 2:
        cells = [[_fmt(a[i, j], integral) for j in range(a.shape[1])] for i in range(a.shape[0])]
    else:
        raise ValueError(f"expected a 2-d matrix or 3-d interval matrix, got shape {a.shape}")
    rows = [f"{a.shape[0]} {a.shape[1]}"] + [" ".join(r) for r in cells]
    return "\n".join(rows) + "\n"
