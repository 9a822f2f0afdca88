"""Binary-chromosome genetic algorithm for real roots of ``x^2 + n x + m``.

A chromosome is a 1-D ``uint8`` array.  Bit 0 is the sign, the remaining
bits are an unsigned magnitude (most significant first) scaled by
``2**-fractional_bits``.  A population is a 2-D array with one chromosome
per row, so most operations work on either shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

MUTATION_MODES = ("flip", "interchange", "reverse")
SIDES = ("left", "right")


def chromosome(bits) -> np.ndarray:
    """Validate ``bits`` and return them as a chromosome array."""
    arr = np.asarray(bits, dtype=np.int64)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("a chromosome needs a sign bit and at least one magnitude bit")
    if np.any((arr != 0) & (arr != 1)):
        raise ValueError("chromosome bits must be 0 or 1")
    return arr.astype(np.uint8)


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 50
    chromosome_length: int = 20
    fractional_bits: int = 14
    max_generations: int = 500
    fitness_tolerance: float = 1e-2
    mutation_mode: str = "flip"
    mutation_probability: float = 0.01
    rng_seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.chromosome_length < 2:
            raise ValueError("chromosome_length must be at least 2")
        if not 0 <= self.fractional_bits <= self.chromosome_length - 2:
            raise ValueError("fractional_bits must lie in [0, chromosome_length - 2]")
        if self.max_generations < 0:
            raise ValueError("max_generations must be non-negative")
        if not self.fitness_tolerance >= 0:
            raise ValueError("fitness_tolerance must be non-negative")
        if self.mutation_mode not in MUTATION_MODES:
            raise ValueError(f"mutation_mode must be one of {MUTATION_MODES}")
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ValueError("mutation_probability must lie in [0, 1]")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be unsigned")


@dataclass
class Quadratic:
    """``a_coef x^2 + n_coef x + m_coef`` with optional known roots."""

    n_coef: float
    m_coef: float
    a_coef: float = 1.0
    root1: float | None = None
    root2: float | None = None
    solved: bool = False

    def __post_init__(self):
        if self.a_coef == 0:
            raise ValueError("degenerate quadratic: a_coef is 0")
        for root in (self.root1, self.root2):
            if root is None:
                continue
            residual = abs(self.a_coef * root * root + self.n_coef * root + self.m_coef)
            if residual > 1e-9 * max(1.0, abs(self.m_coef)):
                raise ValueError(f"{root!r} is not a root (residual {residual:g})")

    @classmethod
    def from_roots(cls, root1: float, root2: float) -> "Quadratic":
        return cls(n_coef=-(root1 + root2), m_coef=root1 * root2, root1=root1, root2=root2)


@dataclass
class RunHistory:
    """Per-generation trace of a GA run.

    Each record is ``(generation, evaluations, generation_best_fitness,
    generation_best_x, best_so_far_fitness, best_so_far_x)``; generation 0
    is the initial population.
    """

    records: list[tuple[int, int, float, float, float, float]] = field(default_factory=list)
    terminated_exact: bool = False
    generations_used: int = 0

    @property
    def per_generation_best(self) -> list[tuple[int, float, float]]:
        return [(g, f, x) for g, _, f, x, _, _ in self.records]

    @property
    def best_so_far(self) -> list[tuple[int, float, float]]:
        return [(g, f, x) for g, _, _, _, f, x in self.records]


def random_population(config: GaConfig, rng: np.random.Generator) -> np.ndarray:
    shape = (config.population_size, config.chromosome_length)
    return rng.integers(0, 2, size=shape, dtype=np.uint8)


def decode(c, fractional_bits: int = 0):
    """Signed fixed-point value of a chromosome, or of every row of a population."""
    bits = np.asarray(c)
    nbits = bits.shape[-1]
    if not 0 <= fractional_bits <= nbits - 2:
        raise ValueError("fractional_bits must lie in [0, len(c) - 2]")
    # float64 weights are exact up to 53 magnitude bits
    weights = np.ldexp(1.0, np.arange(nbits - 2, -1, -1))
    magnitude = bits[..., 1:].astype(np.float64) @ weights
    sign = 1.0 - 2.0 * bits[..., 0]
    return np.ldexp(sign * magnitude, -fractional_bits)


def fitness(x, q: Quadratic):
    """``|f(x)|``; zero exactly at a root, lower is better."""
    if q.a_coef == 0:
        raise ValueError("degenerate quadratic: a_coef is 0")
    return np.abs((q.a_coef * x + q.n_coef) * x + q.m_coef)


def tournament_select(population, q: Quadratic, config: GaConfig,
                      rng: np.random.Generator) -> np.ndarray:
    """Binary tournaments with replacement; ties go to the first contestant."""
    population = np.asarray(population)
    if len(population) == 0:
        raise ValueError("population is empty")
    scores = fitness(decode(population, config.fractional_bits), q)
    draws = rng.integers(0, len(population), size=(config.population_size, 2))
    return population[tournament_winners(scores, draws)].copy()


def tournament_winners(scores, draws) -> np.ndarray:
    """Index of the lower-scoring contestant in each ``(first, second)`` row of ``draws``."""
    scores, draws = np.asarray(scores), np.asarray(draws)
    first, second = draws[:, 0], draws[:, 1]
    return np.where(scores[second] < scores[first], second, first)


def crossover(ci, cj, cut_point: int, side: str):
    """Exchange the bits left of ``cut_point`` or from ``cut_point`` on."""
    ci, cj = np.array(ci, dtype=np.uint8), np.array(cj, dtype=np.uint8)
    if ci.shape != cj.shape or ci.ndim != 1:
        raise ValueError("chromosomes must be 1-D and of equal length")
    if not 1 <= cut_point <= len(ci) - 1:
        raise ValueError(f"cut_point {cut_point} outside [1, {len(ci) - 1}]")
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    segment = slice(0, cut_point) if side == "left" else slice(cut_point, None)
    ci[segment], cj[segment] = cj[segment].copy(), ci[segment].copy()
    return ci, cj


def mutate(c, mode: str, p: float, rng: np.random.Generator) -> np.ndarray:
    if mode not in MUTATION_MODES:
        raise ValueError(f"mode must be one of {MUTATION_MODES}")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    c = np.array(c, dtype=np.uint8)
    if mode == "flip":
        mask = rng.random(len(c)) < p
        c[mask] ^= 1
    elif rng.random() < p:
        if mode == "interchange":
            i, j = rng.choice(len(c), size=2, replace=False)
            c[i], c[j] = c[j], c[i]
        else:
            c = c[::-1].copy()
    return c


def breed(parents: np.ndarray, config: GaConfig, rng: np.random.Generator) -> np.ndarray:
    """Random-pair cut-point crossover until ``population_size`` children exist."""
    n, length = parents.shape
    children = []
    while len(children) < config.population_size:
        i = rng.integers(n)
        j = rng.integers(n - 1)
        j += j >= i
        cut = int(rng.integers(1, length))
        side = SIDES[rng.integers(2)]
        children.extend(crossover(parents[i], parents[j], cut, side))
    return np.array(children[:config.population_size], dtype=np.uint8)


def run_ga(q: Quadratic, config: GaConfig):
    """Evolve a population toward a root of ``q``.

    Returns ``(best_x, best_fitness, history)`` where best is the best
    individual seen in any generation.  The population itself carries no
    elitism.
    """
    if q.a_coef == 0:
        raise ValueError("degenerate quadratic: a_coef is 0")
    rng = np.random.default_rng(config.rng_seed)
    population = random_population(config, rng)
    history = RunHistory()
    best_x, best_f = math.nan, math.inf
    evaluations = 0
    generation = 0
    while True:
        xs = decode(population, config.fractional_bits)
        scores = fitness(xs, q)
        evaluations += len(population)
        i = int(np.argmin(scores))
        if scores[i] < best_f:
            best_x, best_f = float(xs[i]), float(scores[i])
        history.records.append(
            (generation, evaluations, float(scores[i]), float(xs[i]), best_f, best_x))
        if best_f <= config.fitness_tolerance:
            history.terminated_exact = True
            break
        if generation >= config.max_generations:
            break
        population = tournament_select(population, q, config, rng)
        population = breed(population, config, rng)
        population = np.array([
            mutate(c, config.mutation_mode, config.mutation_probability, rng)
            for c in population])
        generation += 1
    history.generations_used = generation
    return best_x, best_f, history
