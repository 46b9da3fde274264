"""Discrete stationary Bellman equation ``X = AX + B`` over a semiring.

Point systems are solved by ``X = A* B``. For interval data the algebraic
solution is assembled from two point solves, one on the lower matrices and one
on the upper matrices; it encloses every ``A* B`` with ``A`` and ``B`` drawn
from the interval data, and its bounds are themselves such solutions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interval import interval_extension, stack_bounds
from .matrix import (
    MatrixInterval,
    OpCounter,
    UndefinedClosureError,
    from_matrix_interval,
    mat_add,
    mat_eq,
    mat_leq,
    mat_mul,
    mat_star,
    mat_star_batch,
    to_matrix_interval,
)
from .oracles import enumerate_solutions
from .semiring import Semiring

__all__ = [
    "BellmanSolution",
    "LeastCheckReport",
    "ResidualError",
    "UnifiedSampleReport",
    "least_check",
    "residual",
    "sample_unified",
    "solve_interval",
    "solution_from_closure",
    "solve_point",
]


class ResidualError(ArithmeticError):
    """The computed solution does not satisfy ``X = AX + B``."""


@dataclass(frozen=True)
class BellmanSolution:
    """Solution ``X`` with the closure that produced it.

    For interval systems ``X`` and ``closure_used`` carry a trailing bound
    axis of length 2.
    """

    X: np.ndarray
    residual_ok: bool
    closure_used: np.ndarray

    @property
    def is_interval(self) -> bool:
        return self.X.ndim == 3


def _check_system(s: Semiring, A, B):
    A, B = s.asarray(A), s.asarray(B)
    e = s.elem_ndim
    if A.ndim != 2 + e or B.ndim != 2 + e:
        raise ValueError(f"A and B must be matrices over {s.name}, got shapes {A.shape} and {B.shape}")
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"A must be square, got {A.shape[:2]}")
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"row counts of A {A.shape[:2]} and B {B.shape[:2]} disagree")
    return A, B


def residual(s: Semiring, A, X, B) -> np.ndarray:
    """Right-hand side ``AX + B`` for a candidate ``X``."""
    return mat_add(s, mat_mul(s, A, X), B)


def _rounding_slack(s: Semiring, A, X, B) -> Semiring:
    """Allow float rounding in the residual of an exactly compared real carrier.

    With dyadic or integer data every sum along a path is exact and the
    slack is never used; with arbitrary reals ``(a + b) + c`` and
    ``a + (b + c)`` may differ in the last bits.
    """
    if s.eq_tolerance != 0 or s.is_finite or not np.issubdtype(np.dtype(s.dtype), np.floating):
        return s
    mags = [np.abs(m[np.isfinite(m)]) for m in (A, X, B)]
    top = [float(m.max()) if m.size else 0.0 for m in mags]
    n = A.shape[0]
    atol = 4 * (n + 2) * np.finfo(float).eps * (n * top[0] + top[1] + top[2])
    return s.with_tolerance(0.0, atol) if atol > 0 else s


def solution_from_closure(s: Semiring, A, B, closure, X=None) -> BellmanSolution:
    """Package ``X = closure B`` after checking the residual."""
    if X is None:
        X = mat_mul(s, closure, B)
    ok = mat_eq(s, X, residual(s, A, X, B))
    if not ok:
        ok = mat_eq(_rounding_slack(s, A, X, B), X, residual(s, A, X, B))
    if not ok:
        raise ResidualError(f"X = AX + B fails within tolerance over {s.name}")
    return BellmanSolution(X=X, residual_ok=ok, closure_used=closure)


def solve_point(
    s: Semiring, A, B, split: str = "scalar_pivot", counter: OpCounter | None = None
) -> BellmanSolution:
    """Solve ``X = AX + B`` for point data as ``X = A* B``.

    Over idempotent semirings this is the least solution.

    Raises
    ------
    UndefinedClosureError
        If ``A*`` is undefined.
    ResidualError
        If the result fails the residual check (numerical breakdown).
    """
    A, B = _check_system(s, A, B)
    closure = mat_star(s, A, split, counter)
    X = mat_mul(s, closure, B, counter)
    return solution_from_closure(s, A, B, closure, X)


def solve_interval(
    s: Semiring, A, B, split: str = "scalar_pivot", method: str = "endpoints"
) -> BellmanSolution:
    """Algebraic solution ``A* B`` of an interval system.

    ``A`` has shape ``(n, n, 2)`` and ``B`` shape ``(n, m, 2)`` over the scalar
    semiring ``s``. With ``method="endpoints"`` (default) the lower and upper
    point systems are solved separately; ``method="interval"`` runs the
    closure directly in interval arithmetic and exists as a cross-check.

    Raises
    ------
    UndefinedClosureError
        With ``endpoint`` set to ``"lower"`` or ``"upper"`` for the
        bound-by-bound method.
    """
    si = interval_extension(s)
    A, B = _check_system(si, A, B)
    if method == "interval":
        closure = mat_star(si, A, split)
        X = mat_mul(si, closure, B)
        return solution_from_closure(si, A, B, closure, X)
    if method != "endpoints":
        raise ValueError(f"method must be 'endpoints' or 'interval', got {method!r}")
    LA, UA = to_matrix_interval(A)
    LB, UB = to_matrix_interval(B)
    parts = []
    for endpoint, a, b in (("lower", LA, LB), ("upper", UA, UB)):
        try:
            parts.append(solve_point(s, a, b, split))
        except UndefinedClosureError as exc:
            raise exc.with_endpoint(endpoint) from None
    lo, hi = parts
    closure = from_matrix_interval(MatrixInterval(lo.closure_used, hi.closure_used))
    X = from_matrix_interval(MatrixInterval(lo.X, hi.X))
    return solution_from_closure(si, A, B, closure, X)


@dataclass(frozen=True)
class UnifiedSampleReport:
    """Outcome of sampling the unified solution set.

    ``hull_lo``/``hull_hi`` are the entrywise extremes over the contained
    draws; ``hull_matches_bounds`` is an observation only.
    """

    trials: int
    contained: int
    skipped: int
    lo_attained: bool
    hi_attained: bool
    hull_lo: np.ndarray | None = None
    hull_hi: np.ndarray | None = None
    hull_matches_bounds: bool = False

    @property
    def ok(self) -> bool:
        return self.contained == self.trials - self.skipped and self.lo_attained and self.hi_attained

    def __str__(self):
        return (
            f"contained={self.contained}/{self.trials} skipped={self.skipped} "
            f"lo_attained={str(self.lo_attained).lower()} hi_attained={str(self.hi_attained).lower()}"
        )


CHUNK = 256


def _draw_chunk(s: Semiring, rng, M):
    lo, hi = to_matrix_interval(M)
    shape = (CHUNK,) + lo.shape
    return s.asarray(s.draw(rng, np.broadcast_to(lo, shape), np.broadcast_to(hi, shape)))


def _hull(s: Semiring, Xs):
    """Entrywise lower and upper envelope of a stack, by pairwise halving."""
    lo = hi = Xs
    while len(lo) > 1:
        half = len(lo) // 2
        a, b = lo[:half], lo[half : 2 * half]
        lo = np.concatenate([np.where(s.order(a, b), a, b), lo[2 * half :]])
        a, b = hi[:half], hi[half : 2 * half]
        hi = np.concatenate([np.where(s.order(a, b), b, a), hi[2 * half :]])
    return lo[0], hi[0]


def sample_unified(
    s: Semiring,
    A,
    B,
    trials: int = 1000,
    seed: int = 0,
    split: str = "scalar_pivot",
) -> UnifiedSampleReport:
    """Draw point systems from interval data and test the enclosure.

    Each entry of ``A`` and ``B`` is drawn independently between its bounds
    (uniform for real carriers, uniform over members for finite ones). Draws
    come in chunks of :data:`CHUNK`, chunk ``c`` from the generator seeded
    with ``(seed, c)``, so the first ``k`` draws do not depend on
    ``trials``. Draws whose closure is undefined are skipped and counted.
    """
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if s.draw is None:
        raise ValueError(f"semiring {s.name} has no sampler")
    solution = solve_interval(s, A, B, split)
    A, B = s.asarray(A), s.asarray(B)
    L, U = to_matrix_interval(solution.X)

    lo_draw = solve_point(s, A[..., 0], B[..., 0], split).X
    hi_draw = solve_point(s, A[..., 1], B[..., 1], split).X
    lo_attained = mat_eq(s, lo_draw, L)
    hi_attained = mat_eq(s, hi_draw, U)

    contained = skipped = 0
    hull_lo = hull_hi = None
    for c, start in enumerate(range(0, trials, CHUNK)):
        take = min(trials - start, CHUNK)
        rng = np.random.default_rng([seed, c])
        As = _draw_chunk(s, rng, A)[:take]
        Bs = _draw_chunk(s, rng, B)[:take]
        closures, defined = mat_star_batch(s, As, split)
        with np.errstate(invalid="ignore", over="ignore"):
            Xs = s.asarray(s.reduce(s.asarray(s.mul(closures[:, :, :, None], Bs[:, None, :, :])), -2))
        Xs = Xs[defined]
        skipped += int(np.count_nonzero(~defined))
        inside = np.all(s.leq(L[None], Xs), axis=(1, 2)) & np.all(s.leq(Xs, U[None]), axis=(1, 2))
        contained += int(np.count_nonzero(inside))
        if len(Xs):
            lo_b, hi_b = _hull(s, Xs)
            if hull_lo is None:
                hull_lo, hull_hi = lo_b, hi_b
            else:
                hull_lo, hull_hi = _hull(s, np.stack([hull_lo, lo_b]))[0], _hull(s, np.stack([hull_hi, hi_b]))[1]

    matches = hull_lo is not None and mat_eq(s, hull_lo, L) and mat_eq(s, hull_hi, U)
    return UnifiedSampleReport(
        trials=trials,
        contained=contained,
        skipped=skipped,
        lo_attained=lo_attained,
        hi_attained=hi_attained,
        hull_lo=hull_lo,
        hull_hi=hull_hi,
        hull_matches_bounds=bool(matches),
    )


@dataclass(frozen=True)
class LeastCheckReport:
    n_solutions: int
    solution: np.ndarray
    is_member: bool
    is_least: bool

    @property
    def ok(self) -> bool:
        return self.is_member and self.is_least

    def __str__(self):
        return (
            f"solutions={self.n_solutions} member={str(self.is_member).lower()} "
            f"least={str(self.is_least).lower()}"
        )


def least_check(s: Semiring, A, B, max_candidates: int = 10**6) -> LeastCheckReport:
    """Compare ``A* B`` with the full solution set over a finite carrier."""
    if not (s.is_finite and s.is_idempotent):
        raise ValueError(f"least_check needs a finite idempotent semiring, got {s.name}")
    A, B = _check_system(s, A, B)
    solutions = enumerate_solutions(s, A, B, max_candidates)
    X = solve_point(s, A, B).X
    member = any(np.array_equal(X, Y) for Y in solutions)
    least = all(mat_leq(s, X, Y) for Y in solutions)
    return LeastCheckReport(len(solutions), X, member, least)


def promote_interval(a) -> np.ndarray:
    """Degenerate-interval view ``[v, v]`` of a point matrix."""
    a = np.asarray(a)
    return stack_bounds(a, a)
