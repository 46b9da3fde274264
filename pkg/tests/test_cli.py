import io
from pathlib import Path

import numpy as np
import pytest

from semiring_bellman import make_instance, mat_star, solve_interval
from semiring_bellman.cli import main
from semiring_bellman.io import parse_matrix, read_matrix

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_closure_example():
    code, out, _ = run("closure", "--semiring", "maxplus", DATA / "maxplus_A.mat")
    assert code == 0
    assert out == "2 2\n0 -2\n-3 0\n"


def test_divergent_solve_names_coordinate():
    code, out, err = run("solve", "--semiring", "rplus", DATA / "rplus_divergent_A.mat", DATA / "ones_B.mat")
    assert code == 1 and out == ""
    assert "(2,2)" in err


def test_verify_example():
    code, out, _ = run(
        "verify", "--semiring", "maxplus", "--trials", 1000, "--seed", 7,
        DATA / "maxplus_interval_A.mat", DATA / "maxplus_interval_B.mat",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "contained=1000/1000 skipped=0 lo_attained=true hi_attained=true"
    assert lines[1].startswith("hull_matches_bounds=")
    subjects = [ln.split()[0] for ln in lines[2:]]
    assert subjects == [
        "subject=split_invariance",
        "subject=fw_closure",
        "subject=truncated_series",
        "subject=interval_paths",
    ]
    assert all(ln.endswith("failures=0") for ln in lines[2:])


def test_verify_point_system_rplus(tmp_path):
    (tmp_path / "A.mat").write_text("2 2\n0.2 0.3\n0.1 0.4\n")
    code, out, _ = run("verify", "--semiring", "rplus", "--trials", 20, tmp_path / "A.mat", DATA / "ones_B.mat")
    assert code == 0
    assert "subject=gauss_closure checked=2" in out


def test_verify_finite_runs_least_check(tmp_path):
    (tmp_path / "A.mat").write_text("2 2\n[0,1] 0\n1 [0,2]\n")
    (tmp_path / "B.mat").write_text("2 1\n[0,2]\n1\n")
    code, out, _ = run("verify", "--semiring", "chain:3", "--trials", 50, tmp_path / "A.mat", tmp_path / "B.mat")
    assert code == 0
    assert "subject=least_solution checked=2 max_disc=exact failures=0" in out


def test_solve_interval_output_reparses():
    s = make_instance("maxplus")
    code, out, _ = run("solve", "--semiring", "maxplus", DATA / "maxplus_interval_A.mat", DATA / "maxplus_interval_B.mat")
    assert code == 0
    X, is_interval = parse_matrix(out)
    A, _ = read_matrix(DATA / "maxplus_interval_A.mat")
    B, _ = read_matrix(DATA / "maxplus_interval_B.mat")
    assert is_interval
    assert X.tobytes() == solve_interval(s, A, B).X.tobytes()


def test_rplus_closure_reparses_bit_exact(tmp_path):
    A = np.array([[0.2, 0.3], [0.1, 0.4]])
    (tmp_path / "A.mat").write_text("2 2\n0.2 0.3\n0.1 0.4\n")
    code, out, _ = run("closure", "--semiring", "rplus", "--split", "balanced", tmp_path / "A.mat")
    assert code == 0
    S, _ = parse_matrix(out)
    assert S.tobytes() == mat_star(make_instance("rplus"), A, "balanced").tobytes()


@pytest.mark.parametrize("kind", ["boolean", "chain:3", "maxplus_completed"])
def test_axioms_command(kind):
    code, out, _ = run("axioms", "--semiring", kind, "--samples", 50)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert all("violations=0" in ln for ln in lines)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["closure"],
        ["closure", "--semiring", "tropical", DATA / "maxplus_A.mat"],
        ["closure", "--semiring", "maxplus", DATA / "missing.mat"],
        ["closure", "--semiring", "maxplus", "--split", "thirds", DATA / "maxplus_A.mat"],
        ["solve", "--semiring", "maxplus", DATA / "maxplus_A.mat", DATA / "maxplus_interval_B.mat"],
        ["closure", "--semiring", "chain:3", DATA / "maxplus_A.mat"],
        ["verify", "--semiring", "maxplus", "--trials", -1, DATA / "maxplus_A.mat", DATA / "ones_B.mat"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = run(*argv)
    assert code == 2


def test_parse_error_reports_position(tmp_path):
    (tmp_path / "bad.mat").write_text("2 2\n1 x\n0 0\n")
    code, _, err = run("closure", "--semiring", "maxplus", tmp_path / "bad.mat")
    assert code == 2
    assert "line 2, column 3" in err


def test_shape_mismatch_names_both_shapes():
    code, _, err = run("solve", "--semiring", "maxplus", DATA / "maxplus_A.mat", DATA / "maxplus_interval_B.mat")
    assert code == 2
    assert "(2, 2)" in err and "(3, 1)" in err


def test_repeat_runs_are_byte_identical():
    argv = ["verify", "--semiring", "maxplus", "--trials", 300, "--seed", 7,
            DATA / "maxplus_interval_A.mat", DATA / "maxplus_interval_B.mat"]
    assert run(*argv) == run(*argv)
