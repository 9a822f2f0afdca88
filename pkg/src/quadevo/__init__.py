"""Evolutionary solvers for quadratic equations.

``ga_core``      binary-chromosome GA searching for a real root of x^2 + n x + m
``sexpr``        S-expression formula trees: parse, evaluate, serialize, generate
``coevolution``  predator/prey coevolution of root formulas with hit-point fitness
``harness``      the ``quadevo`` command line
"""

from .coevolution import (CoevoConfig, Predator, QuadraticPrey, evaluate_predator,
                          gen_prey, recombine, run_coevolution, success_rate)
from .ga_core import (GaConfig, Quadratic, RunHistory, crossover, decode, fitness,
                      mutate, random_population, run_ga, tournament_select)
from .sexpr import (EvalError, ParseError, evaluate, parse, quadratic_formula_tree,
                    random_tree, serialize)

__version__ = "0.1.0"
