"""Command-line front end.

Subcommands::

    closure --semiring S A.mat
    solve   --semiring S A.mat B.mat
    verify  --semiring S A.mat B.mat [--trials T] [--seed R]
    axioms  --semiring S

Exit status is 0 on success, 1 when a closure is undefined or a check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bellman import ResidualError, least_check, sample_unified, solve_interval, solve_point
from .datasets import make_elements
from .interval import interval_extension
from .io import MatrixFormatError, format_matrix, read_matrix
from .matrix import (
    SPLITS,
    UndefinedClosureError,
    interval_closure,
    mat_eq,
    mat_star,
    matrix_semiring,
    to_matrix_interval,
)
from .oracles import DivergentError, OracleReport, discrepancy, fw_closure, gauss_closure, truncated_series
from .semiring import check_axioms, make_instance
from .validation import check_matrix, check_system

EXIT_OK = 0
EXIT_UNDEFINED = 1
EXIT_USAGE = 2

# instances whose closure is the finite sum E + A + ... + A^(n-1)
_SERIES_KINDS = ("maxplus", "minplus", "maxmin", "boolean", "chain")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="semiring-bellman",
        description="Matrix closure and exact interval Bellman solver over positive semirings.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument(
            "--semiring",
            required=True,
            help="rplus, maxplus, maxplus_completed, minplus, maxmin:a:b, boolean, chain:k",
        )
        p.add_argument("--tolerance", type=float, default=None, help="relative comparison tolerance override")

    p = sub.add_parser("closure", help="write A* for the matrix in A.mat")
    common(p)
    p.add_argument("--split", choices=SPLITS, default="scalar_pivot")
    p.add_argument("a_path", metavar="A.mat")

    p = sub.add_parser("solve", help="write the least solution A*B of X = AX + B")
    common(p)
    p.add_argument("--split", choices=SPLITS, default="scalar_pivot")
    p.add_argument("a_path", metavar="A.mat")
    p.add_argument("b_path", metavar="B.mat")

    p = sub.add_parser("verify", help="sample the unified solution set and run the oracles")
    common(p)
    p.add_argument("--split", choices=SPLITS, default="scalar_pivot")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("a_path", metavar="A.mat")
    p.add_argument("b_path", metavar="B.mat")

    p = sub.add_parser("axioms", help="check the semiring axioms on built-in samples")
    common(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _semiring(args):
    s = make_instance(args.semiring)
    if args.tolerance is not None:
        s = s.with_tolerance(args.tolerance)
    return s


def _closure(s, A, split):
    if A.ndim == 3:
        return interval_closure(s, A, split)
    return mat_star(s, A, split)


def _cmd_closure(args, s, out):
    A = check_matrix(s, read_matrix(args.a_path)[0], square=True, name="A")
    out.write(format_matrix(_closure(s, A, args.split), s))
    return EXIT_OK


def _cmd_solve(args, s, out):
    A, B, is_interval = check_system(s, read_matrix(args.a_path)[0], read_matrix(args.b_path)[0])
    if is_interval:
        X = solve_interval(s, A, B, args.split).X
    else:
        X = solve_point(s, A, B, args.split).X
    out.write(format_matrix(X, s))
    return EXIT_OK


def _compare(report, s, key, expected, got):
    exact = s.is_idempotent
    disc = discrepancy(expected, got)
    passed = mat_eq(s, expected, got) if np.shape(expected) == np.shape(got) else False
    report.add(key, expected, got, disc, passed, exact)


def _oracle_reports(s, A, B, split):
    """Independent checks of the endpoint closures and solutions."""
    reports = []
    kind = s.name.split(":")[0]
    LA, UA = to_matrix_interval(A)
    LB, UB = to_matrix_interval(B)
    endpoints = [(LA, LB), (UA, UB)]
    closures = [mat_star(s, a, split) for a, _ in endpoints]

    other = "balanced" if split == "scalar_pivot" else "scalar_pivot"
    rep = OracleReport("split_invariance")
    for a, c in zip((LA, UA), closures):
        _compare(rep, s, a, c, mat_star(s, a, other))
    reports.append(rep)

    if kind == "rplus":
        rep = OracleReport("gauss_closure")
        for a, c in zip((LA, UA), closures):
            try:
                _compare(rep, s, a, gauss_closure(a), c)
            except DivergentError as exc:
                rep.instances_checked += 1
                rep.failures.append(("divergent", str(exc), c))
        reports.append(rep)
    if s.is_idempotent:
        rep = OracleReport("fw_closure")
        for a, c in zip((LA, UA), closures):
            _compare(rep, s, a, fw_closure(s, a), c)
        reports.append(rep)
    if kind in _SERIES_KINDS:
        rep = OracleReport("truncated_series")
        for a, c in zip((LA, UA), closures):
            _compare(rep, s, a, truncated_series(s, a, a.shape[0] - 1), c)
        reports.append(rep)

    rep = OracleReport("interval_paths")
    prod = solve_interval(s, A, B, split).X
    direct = solve_interval(s, A, B, split, method="interval").X
    _compare(rep, interval_extension(s), (A, B), direct, prod)
    reports.append(rep)

    if s.is_finite:
        rep = OracleReport("least_solution")
        for a, b in endpoints:
            if len(s.elements) ** b.size <= 10**6:
                res = least_check(s, a, b)
                rep.add((a, b), None, None, 0.0, res.ok, True)
        reports.append(rep)
    return reports


def _cmd_verify(args, s, out):
    if args.trials < 0:
        raise ValueError("--trials must be nonnegative")
    A, B, _ = check_system(s, read_matrix(args.a_path)[0], read_matrix(args.b_path)[0])
    if A.ndim == 2:
        A, B = np.stack([A, A], axis=-1), np.stack([B, B], axis=-1)
    report = sample_unified(s, A, B, trials=args.trials, seed=args.seed, split=args.split)
    out.write(f"{report}\n")
    out.write(f"hull_matches_bounds={str(report.hull_matches_bounds).lower()}\n")
    oracles = _oracle_reports(s, A, B, args.split)
    for rep in oracles:
        out.write(f"{rep}\n")
    return EXIT_OK if report.ok and all(r.ok for r in oracles) else EXIT_UNDEFINED


def _cmd_axioms(args, s, out):
    samples = make_elements(s, args.samples, args.seed)
    status = EXIT_OK
    for target, smp in (
        (s, samples),
        (interval_extension(s), _interval_samples(s, samples, args.seed)),
        (matrix_semiring(s, 2), _matrix_samples(s, samples, args.seed)),
    ):
        report = check_axioms(target, smp, seed=args.seed)
        out.write(f"{report}\n")
        if not report.ok:
            status = EXIT_UNDEFINED
    return status


def _interval_samples(s, samples, seed, size=200):
    rng = np.random.default_rng(seed)
    i = rng.integers(0, len(samples), (size, 2))
    a, b = samples[i[:, 0]], samples[i[:, 1]]
    lo = np.where(s.order(a, b), a, b)
    hi = np.where(s.order(a, b), b, a)
    return np.stack([lo, hi], axis=-1)


def _matrix_samples(s, samples, seed, size=40, n=2):
    rng = np.random.default_rng(seed)
    return samples[rng.integers(0, len(samples), (size, n, n))]


_COMMANDS = {"closure": _cmd_closure, "solve": _cmd_solve, "verify": _cmd_verify, "axioms": _cmd_axioms}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        s = _semiring(args)
        return _COMMANDS[args.command](args, s, out)
    except UndefinedClosureError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNDEFINED
    except (DivergentError, ResidualError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNDEFINED
    except MatrixFormatError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
