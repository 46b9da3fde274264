"""Linear algebra over positive semirings with closure.

Matrix closure ``A*`` by the escalator recursion, the weak interval extension,
and an exact polynomial-time interval solver for ``X = AX + B``.
"""

from .bellman import (
    BellmanSolution,
    LeastCheckReport,
    ResidualError,
    UnifiedSampleReport,
    least_check,
    sample_unified,
    solve_interval,
    solve_point,
)
from .interval import (
    Interval,
    contains,
    interval,
    interval_extension,
    iv_add,
    iv_leq,
    iv_mul,
    iv_star,
)
from .matrix import (
    MatrixInterval,
    OpCounter,
    UndefinedClosureError,
    from_matrix_interval,
    identity,
    interval_closure,
    mat_add,
    mat_leq,
    mat_mul,
    mat_star,
    mat_star_batch,
    matrix_semiring,
    to_matrix_interval,
    zeros,
)
from .oracles import DivergentError, enumerate_solutions, fw_closure, gauss_closure, truncated_series
from .semiring import UNDEFINED, AxiomReport, Semiring, check_axioms, make_instance, star

__version__ = "0.1.0"


def __getattr__(name):
    # scikit-learn is imported on first use so the CLI starts quickly
    if name == "BellmanSolver":
        from .estimators import BellmanSolver

        return BellmanSolver
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

__all__ = [
    "UNDEFINED",
    "AxiomReport",
    "BellmanSolution",
    "BellmanSolver",
    "DivergentError",
    "Interval",
    "LeastCheckReport",
    "MatrixInterval",
    "OpCounter",
    "ResidualError",
    "Semiring",
    "UndefinedClosureError",
    "UnifiedSampleReport",
    "check_axioms",
    "contains",
    "enumerate_solutions",
    "from_matrix_interval",
    "fw_closure",
    "gauss_closure",
    "identity",
    "interval",
    "interval_closure",
    "interval_extension",
    "iv_add",
    "iv_leq",
    "iv_mul",
    "iv_star",
    "least_check",
    "make_instance",
    "mat_add",
    "mat_leq",
    "mat_mul",
    "mat_star",
    "mat_star_batch",
    "matrix_semiring",
    "sample_unified",
    "solve_interval",
    "solve_point",
    "star",
    "to_matrix_interval",
    "truncated_series",
    "zeros",
]
