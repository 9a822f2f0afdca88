"""Command line driver: ``quadevo solve | coevolve | eval-expr``.

Exit codes: 0 success, 1 bad flags / parse error / unwritable output,
2 ``solve`` ran out of generations before reaching the tolerance,
3 ``eval-expr`` evaluation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from . import sexpr
from .coevolution import CoevoConfig, run_coevolution, success_rate
from .ga_core import MUTATION_MODES, GaConfig, Quadratic, RunHistory, run_ga

SOLVE_HEADER = ("generation", "evaluations", "best_fitness", "best_x")
COEVOLVE_HEADER = ("epoch", "alive_count", "solved_count", "best_hp")


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".10g")


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([fmt(v) for v in row] for row in rows)
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    Path(path).write_text(csv_text(header, rows), encoding="utf-8", newline="")


def solve_rows(history: RunHistory):
    """Best-so-far trace, one row per generation."""
    return [(g, evals, best_f, best_x) for g, evals, _, _, best_f, best_x in history.records]


def run_paths(path: str | None, runs: int, k: int) -> str | None:
    if path is None or runs == 1:
        return path
    p = Path(path)
    return str(p.with_name(f"{p.stem}_run{k}{p.suffix}"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _binding(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or len(name) != 1 or not name.isalpha():
        raise argparse.ArgumentTypeError(f"expected LETTER=VALUE, got {text!r}")
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadevo", description=__doc__.splitlines()[0],
                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    fmt_cls = argparse.ArgumentDefaultsHelpFormatter

    s = sub.add_parser("solve", help="GA root search on x^2 + n x + m", formatter_class=fmt_cls)
    s.add_argument("--n", type=float, required=True, help="linear coefficient")
    s.add_argument("--m", type=float, required=True, help="constant term")
    s.add_argument("--pop", type=int, default=50, help="population size")
    s.add_argument("--chrom-len", type=int, default=20, help="chromosome length in bits")
    s.add_argument("--frac-bits", type=int, default=14, help="fixed-point fractional bits")
    s.add_argument("--generations", type=int, default=500, help="maximum generations")
    s.add_argument("--tolerance", type=float, default=1e-2, help="stop when |f(x)| <= this")
    s.add_argument("--mutation", choices=MUTATION_MODES, default="flip", help="mutation mode")
    s.add_argument("--mut-prob", type=float, default=0.01, help="mutation probability")
    s.add_argument("--seed", type=_seed, default=0, help="RNG seed")
    s.add_argument("--runs", type=int, default=1,
                   help="independent runs with seeds seed..seed+runs-1; outputs get a _runK suffix")
    s.add_argument("--out", default=None, help="CSV trace path (generation,evaluations,best_fitness,best_x)")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("coevolve", help="predator/prey formula coevolution", formatter_class=fmt_cls)
    c.add_argument("--predators", type=int, default=200, help="predator population size")
    c.add_argument("--prey", type=int, default=50, help="prey per epoch")
    c.add_argument("--hp", type=float, default=100.0, help="initial hit-points")
    c.add_argument("--reward", type=float, default=1.0, help="hit-points deducted on a hit")
    c.add_argument("--penalty", type=float, default=10.0, help="hit-points deducted on a miss")
    c.add_argument("--tau", type=float, default=1e-3, help="root-match tolerance")
    c.add_argument("--evals", type=int, default=20, help="evaluations per predator per epoch")
    c.add_argument("--root-min", type=float, default=-10.0, help="lower bound of prey roots")
    c.add_argument("--root-max", type=float, default=10.0, help="upper bound of prey roots")
    c.add_argument("--depth", type=int, default=8, help="maximum tree depth")
    c.add_argument("--epochs", type=int, default=100, help="number of epochs")
    c.add_argument("--seed", type=_seed, default=0, help="RNG seed")
    c.add_argument("--inject-oracle", action="store_true",
                   help="seed the population with the quadratic-formula tree")
    c.add_argument("--runs", type=int, default=1,
                   help="independent runs with seeds seed..seed+runs-1; outputs get a _runK suffix")
    c.add_argument("--out", default=None, help="CSV stats path (epoch,alive_count,solved_count,best_hp)")
    c.add_argument("--best-out", default=None, help="file for the best predator's S-expression")
    c.set_defaults(func=cmd_coevolve)

    e = sub.add_parser("eval-expr", help="evaluate an S-expression", formatter_class=fmt_cls)
    e.add_argument("expr", help='expression, e.g. "(+ 0.089 0.563)"')
    e.add_argument("--bind", type=_binding, action="append", default=[], metavar="L=V",
                   help="bind identifier L to value V (repeatable)")
    e.set_defaults(func=cmd_eval_expr)
    return parser


def cmd_solve(args, parser) -> int:
    if args.runs < 1:
        parser.error("--runs must be positive")
    try:
        q = Quadratic(n_coef=args.n, m_coef=args.m)
        configs = [GaConfig(population_size=args.pop, chromosome_length=args.chrom_len,
                            fractional_bits=args.frac_bits, max_generations=args.generations,
                            fitness_tolerance=args.tolerance, mutation_mode=args.mutation,
                            mutation_probability=args.mut_prob, rng_seed=args.seed + k)
                   for k in range(args.runs)]
    except ValueError as exc:
        parser.error(str(exc))
    status = 0
    for k, config in enumerate(configs):
        best_x, best_f, history = run_ga(q, config)
        out = run_paths(args.out, args.runs, k)
        if out is not None:
            try:
                write_csv(out, SOLVE_HEADER, solve_rows(history))
            except OSError as exc:
                print(f"quadevo: cannot write {out}: {exc}", file=sys.stderr)
                return 1
        print(f"seed={config.rng_seed} root={fmt(best_x)} fitness={fmt(best_f)} "
              f"generations={history.generations_used} converged={history.terminated_exact}")
        if not history.terminated_exact:
            status = 2
    return status


def cmd_coevolve(args, parser) -> int:
    if args.runs < 1:
        parser.error("--runs must be positive")
    try:
        configs = [CoevoConfig(predator_count=args.predators, prey_count=args.prey,
                               initial_hp=args.hp, reward_deduction=args.reward,
                               penalty_deduction=args.penalty, accuracy_tolerance=args.tau,
                               evaluations_per_epoch=args.evals,
                               root_range=(args.root_min, args.root_max),
                               max_epochs=args.epochs, max_tree_depth=args.depth,
                               rng_seed=args.seed + k)
                   for k in range(args.runs)]
    except ValueError as exc:
        parser.error(str(exc))
    seeds = [sexpr.quadratic_formula_tree("+")] if args.inject_oracle else []
    for k, config in enumerate(configs):
        result = run_coevolution(config, seed_trees=seeds)
        out = run_paths(args.out, args.runs, k)
        best_out = run_paths(args.best_out, args.runs, k)
        try:
            if out is not None:
                write_csv(out, COEVOLVE_HEADER, result.epoch_stats)
            if best_out is not None:
                sexpr.save([result.best.tree], best_out)
        except OSError as exc:
            print(f"quadevo: cannot write output: {exc}", file=sys.stderr)
            return 1
        rate = success_rate(result.best, 1000, config,
                            np.random.default_rng([config.rng_seed, 1]))
        print(f"seed={config.rng_seed} best_hp={fmt(result.best.hit_points)} "
              f"success_rate={fmt(rate)} best={result.best.expression}")
    return 0


def cmd_eval_expr(args, parser) -> int:
    try:
        tree = sexpr.parse(args.expr)
    except sexpr.ParseError as exc:
        print(f"quadevo: parse error: {exc}", file=sys.stderr)
        return 1
    try:
        value = sexpr.evaluate(tree, dict(args.bind))
    except sexpr.EvalError as exc:
        print(f"quadevo: {exc.kind} at node {list(exc.path)}", file=sys.stderr)
        return 3
    print(fmt(value))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
