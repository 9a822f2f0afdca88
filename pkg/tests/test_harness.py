import csv
import math
import subprocess
import sys

import numpy as np
import pytest

from quadevo import sexpr
from quadevo.coevolution import CoevoConfig, success_rate
from quadevo.harness import csv_text, fmt, main, run_paths

PAPER_ROOTS = (-1 - 2 * math.sqrt(2), -1 + 2 * math.sqrt(2))


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_fmt_ten_significant_digits():
    assert fmt(0.089 + 0.563) == "0.652"
    assert fmt(1 / 3) == "0.3333333333"
    assert fmt(7) == "7"
    assert fmt(np.int64(3)) == "3"


def test_csv_text_layout():
    assert csv_text(("a", "b"), [(1, 0.5)]) == "a,b\n1,0.5\n"


def test_run_paths():
    assert run_paths("out/trace.csv", 3, 2) == "out/trace_run2.csv"
    assert run_paths("trace.csv", 1, 0) == "trace.csv"
    assert run_paths(None, 3, 1) is None


# -- solve ---------------------------------------------------------------

def test_solve_paper_equation(tmp_path, capsys):
    out = tmp_path / "solve.csv"
    code = main(["solve", "--n", "2", "--m", "-7", "--seed", "42", "--generations", "500",
                 "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert rows[0] == ["generation", "evaluations", "best_fitness", "best_x"]
    body = rows[1:]
    assert [int(r[0]) for r in body] == list(range(len(body)))
    fitness = [float(r[2]) for r in body]
    assert all(b <= a for a, b in zip(fitness, fitness[1:]))
    assert min(abs(float(body[-1][3]) - r) for r in PAPER_ROOTS) <= 5e-2
    assert "root=" in capsys.readouterr().out


def test_solve_integer_roots_exact(capsys):
    assert main(["solve", "--n", "-5", "--m", "6", "--frac-bits", "0", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "fitness=0 " in out
    assert "root=2 " in out or "root=3 " in out


def test_solve_double_root_at_zero(capsys):
    assert main(["solve", "--n", "0", "--m", "0", "--tolerance", "0"]) == 0
    assert "root=0 fitness=0 " in capsys.readouterr().out


def test_solve_exhausted_generations_exit_2(capsys):
    # x^2 + 1 never reaches zero
    assert main(["solve", "--n", "0", "--m", "1", "--generations", "5", "--tolerance", "0"]) == 2


def test_solve_multiple_runs(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["solve", "--n", "-5", "--m", "6", "--frac-bits", "0", "--chrom-len", "8",
                 "--tolerance", "0", "--runs", "3", "--out", str(out)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["t_run0.csv", "t_run1.csv", "t_run2.csv"]
    assert capsys.readouterr().out.count("seed=") == 3


@pytest.mark.parametrize("argv", [
    ["solve", "--n", "1"],
    ["solve", "--n", "1", "--m", "1", "--bogus"],
    ["solve", "--n", "1", "--m", "1", "--pop", "1"],
    ["solve", "--n", "1", "--m", "1", "--chrom-len", "8", "--frac-bits", "7"],
    ["solve", "--n", "1", "--m", "1", "--mutation", "scramble"],
    ["solve", "--n", "1", "--m", "1", "--seed", "-1"],
    ["solve", "--n", "x", "--m", "1"],
    ["coevolve", "--reward", "20"],
    ["coevolve", "--tau", "0"],
    ["frobnicate"],
    [],
])
def test_invalid_flags_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 1


def test_unwritable_output_exit_1(tmp_path, capsys):
    missing = tmp_path / "no" / "such" / "dir.csv"
    assert main(["solve", "--n", "0", "--m", "0", "--out", str(missing)]) == 1
    assert main(["coevolve", "--epochs", "1", "--predators", "10", "--out", str(missing)]) == 1


def test_help_lists_every_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["coevolve", "--help"])
    assert info.value.code == 0
    text = capsys.readouterr().out
    for flag in ("--predators", "--prey", "--hp", "--reward", "--penalty", "--tau", "--evals",
                 "--root-min", "--root-max", "--depth", "--epochs", "--seed",
                 "--inject-oracle", "--out", "--best-out"):
        assert flag in text


# -- coevolve ------------------------------------------------------------

def test_coevolve_rows_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert main(["coevolve", "--seed", "7", "--epochs", "50", "--out", str(out)]) == 0
    rows = read_csv(a)
    assert rows[0] == ["epoch", "alive_count", "solved_count", "best_hp"]
    assert len(rows) == 51
    assert a.read_bytes() == b.read_bytes()


def test_coevolve_inject_oracle(tmp_path, capsys):
    best = tmp_path / "best.sexpr"
    assert main(["coevolve", "--seed", "7", "--epochs", "50", "--inject-oracle",
                 "--best-out", str(best)]) == 0
    lines = best.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1
    tree = sexpr.parse(lines[0])
    rate = success_rate(tree, 1000, CoevoConfig(accuracy_tolerance=1e-6),
                        np.random.default_rng(0))
    assert rate == 1.0


def test_coevolve_zero_epochs(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["coevolve", "--epochs", "0", "--predators", "20", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == "epoch,alive_count,solved_count,best_hp\n"


# -- eval-expr -----------------------------------------------------------

@pytest.mark.parametrize("argv, code, stdout", [
    (["eval-expr", "(+ 0.089 0.563)"], 0, "0.652\n"),
    (["eval-expr", "(/ (+ 0.089 0.563) X)", "--bind", "X=5"], 0, "0.1304\n"),
    (["eval-expr", "(÷ (+ A B) X)", "--bind", "A=1", "--bind", "B=2", "--bind", "X=4"], 0, "0.75\n"),
    (["eval-expr", "(& -4)"], 3, ""),
    (["eval-expr", "(/ 1 0)"], 3, ""),
    (["eval-expr", "(+ Q 1)"], 3, ""),
    (["eval-expr", "(+ 1"], 1, ""),
])
def test_eval_expr(argv, code, stdout, capsys):
    assert main(argv) == code
    assert capsys.readouterr().out == stdout


def test_eval_expr_reports_error_kind(capsys):
    main(["eval-expr", "(& -4)"])
    assert "NegativeSqrt" in capsys.readouterr().err
    main(["eval-expr", "(+ 1 2"])
    assert "position 0" in capsys.readouterr().err


def test_bad_binding_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval-expr", "X", "--bind", "XY=1"])
    assert info.value.code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quadevo", "eval-expr", "(* 2 X)",
                           "--bind", "X=21"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "42\n"
