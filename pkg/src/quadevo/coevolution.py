"""Predator/prey coevolution of root-finding formulas.

Predators are expression trees over ``A``, ``B``, ``C``.  Prey are monic
quadratics built from two random real roots.  A predator starts an epoch
with a hit-point budget; each prey it faces costs a little when it returns
one of the roots and a lot when it misses.  Running out of hit-points, or
any evaluation error, kills it.  Survivors are ranked by remaining
hit-points and recombined by subtree crossover between a high and a low
group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import sexpr
from .sexpr import EvalError, Tree

IDENTIFIERS = ("A", "B", "C")


@dataclass
class QuadraticPrey:
    root1: float
    root2: float
    A: float = 1.0
    B: float = 0.0
    C: float = 0.0
    solved: bool = False

    @classmethod
    def from_roots(cls, root1: float, root2: float) -> "QuadraticPrey":
        return cls(root1, root2, A=1.0, B=-(root1 + root2), C=root1 * root2)

    def bindings(self) -> dict[str, float]:
        return {"A": self.A, "B": self.B, "C": self.C}

    def matches(self, value: float, tolerance: float) -> bool:
        return min(abs(value - self.root1), abs(value - self.root2)) <= tolerance


@dataclass
class Predator:
    tree: Tree
    hit_points: float
    alive: bool = True

    @property
    def expression(self) -> str:
        return sexpr.serialize(self.tree)


@dataclass(frozen=True)
class CoevoConfig:
    predator_count: int = 200
    prey_count: int = 50
    initial_hp: float = 100.0
    reward_deduction: float = 1.0
    penalty_deduction: float = 10.0
    accuracy_tolerance: float = 1e-3
    evaluations_per_epoch: int = 20
    root_range: tuple[float, float] = (-10.0, 10.0)
    max_epochs: int = 100
    max_tree_depth: int = 8
    constant_range: tuple[float, float] = (-10.0, 10.0)
    rng_seed: int = 0

    def __post_init__(self):
        if self.predator_count < 1 or self.prey_count < 1:
            raise ValueError("predator_count and prey_count must be positive")
        if self.evaluations_per_epoch < 1:
            raise ValueError("evaluations_per_epoch must be positive")
        if not self.initial_hp > 0:
            raise ValueError("initial_hp must be positive")
        if not 0 < self.reward_deduction < self.penalty_deduction:
            raise ValueError("need 0 < reward_deduction < penalty_deduction")
        if not self.accuracy_tolerance > 0:
            raise ValueError("accuracy_tolerance must be positive")
        if not self.root_range[0] < self.root_range[1]:
            raise ValueError("root_range must be a non-degenerate interval")
        if not self.constant_range[0] <= self.constant_range[1]:
            raise ValueError("constant_range is reversed")
        if self.max_epochs < 0:
            raise ValueError("max_epochs must be non-negative")
        if self.max_tree_depth < 1:
            raise ValueError("max_tree_depth must be at least 1")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be unsigned")


class Monitor:
    """Hooks into a coevolution run.  All methods are no-ops by default."""

    def on_evaluation(self, epoch: int, predator: Predator, prey: QuadraticPrey,
                      outcome: str, prey_pool: list[QuadraticPrey]) -> None:
        """``outcome`` is one of ``"hit"``, ``"miss"`` or ``"error"``."""

    def on_recombine(self, epoch: int, parents: list[Predator],
                     children: list[Predator]) -> None:
        pass

    def on_epoch_end(self, epoch: int, population: list[Predator],
                     prey_pool: list[QuadraticPrey]) -> None:
        pass


@dataclass
class CoevolutionResult:
    best: Predator
    epoch_stats: list[tuple[int, int, int, float]] = field(default_factory=list)

    def __iter__(self):
        return iter((self.best, self.epoch_stats))


def gen_prey(root_range: tuple[float, float], rng: np.random.Generator) -> QuadraticPrey:
    lo, hi = root_range
    if not lo < hi:
        raise ValueError("root_range must be a non-degenerate interval")
    alpha, beta = rng.uniform(lo, hi, size=2)
    return QuadraticPrey.from_roots(float(alpha), float(beta))


def evaluate_predator(p: Predator, prey_pool: list[QuadraticPrey], config: CoevoConfig,
                      rng: np.random.Generator, *, monitor: Monitor | None = None,
                      epoch: int = 0):
    """Run ``p`` against randomly chosen unsolved prey.

    Mutates ``p`` and the prey in place and returns both.  Stops early when
    the predator dies or no unsolved prey is left.
    """
    for _ in range(config.evaluations_per_epoch):
        if not p.alive:
            break
        open_prey = [q for q in prey_pool if not q.solved]
        if not open_prey:
            break
        prey = open_prey[rng.integers(len(open_prey))]
        try:
            value = sexpr.evaluate(p.tree, prey.bindings())
        except EvalError:
            p.alive = False
            outcome = "error"
        else:
            if prey.matches(value, config.accuracy_tolerance):
                p.hit_points -= config.reward_deduction
                prey.solved = True
                outcome = "hit"
            else:
                p.hit_points -= config.penalty_deduction
                outcome = "miss"
            if p.hit_points <= 0:
                p.alive = False
        if monitor is not None:
            monitor.on_evaluation(epoch, p, prey, outcome, prey_pool)
    return p, prey_pool


def _clamp_depth(tree: Tree, max_depth: int, rng: np.random.Generator) -> Tree:
    # Any operator sitting at the depth limit is cut down to one of its own leaves.
    def clamp(node: Tree, level: int) -> Tree:
        if isinstance(node, sexpr.LEAF_TYPES):
            return node
        if level >= max_depth:
            leaves = [n for _, n in sexpr.nodes(node) if isinstance(n, sexpr.LEAF_TYPES)]
            return leaves[rng.integers(len(leaves))]
        if isinstance(node, sexpr.UnaryOp):
            return sexpr.UnaryOp(node.op, clamp(node.child, level + 1))
        return sexpr.BinaryOp(node.op, clamp(node.left, level + 1),
                              clamp(node.right, level + 1))

    return clamp(tree, 1)


def subtree_crossover(primary: Tree, secondary: Tree, rng: np.random.Generator) -> Tree:
    """Copy of ``primary`` with a random subtree replaced by a random subtree of ``secondary``."""
    targets = sexpr.nodes(primary)
    donors = sexpr.nodes(secondary)
    path, _ = targets[rng.integers(len(targets))]
    _, donor = donors[rng.integers(len(donors))]
    return sexpr.replace(primary, path, donor)


def recombine(survivors: list[Predator], config: CoevoConfig,
              rng: np.random.Generator) -> list[Predator]:
    if len(survivors) < 2:
        raise ValueError("recombination needs at least 2 survivors")
    if any(not p.alive for p in survivors):
        raise ValueError("dead predators cannot reproduce")
    ranked = sorted(survivors, key=lambda p: p.hit_points, reverse=True)
    split = (len(ranked) + 1) // 2
    high, low = ranked[:split], ranked[split:]
    children = []
    for _ in range(config.predator_count):
        pair = (high[rng.integers(len(high))], low[rng.integers(len(low))])
        first = rng.integers(2)
        primary, secondary = pair[first], pair[1 - first]
        tree = subtree_crossover(primary.tree, secondary.tree, rng)
        if sexpr.depth(tree) > config.max_tree_depth:
            tree = _clamp_depth(tree, config.max_tree_depth, rng)
        children.append(Predator(tree, config.initial_hp))
    return children


def _random_population(config: CoevoConfig, rng: np.random.Generator) -> list[Predator]:
    return [Predator(sexpr.random_tree(config.max_tree_depth, IDENTIFIERS,
                                       config.constant_range, rng), config.initial_hp)
            for _ in range(config.predator_count)]


def _fallback_key(p: Predator):
    # dead with hit-points left means an evaluation error killed it; rank those last
    return (p.alive, p.alive or p.hit_points <= 0, p.hit_points)


def run_coevolution(config: CoevoConfig, *, seed_trees: list[Tree] = (),
                    monitor: Monitor | None = None) -> CoevolutionResult:
    """Evolve predators for ``config.max_epochs`` epochs.

    ``seed_trees`` replace the first members of the random initial
    population.  Each epoch draws a fresh prey pool, evaluates every
    predator in turn, culls the dead, and recombines the survivors (or
    reseeds at random when fewer than two survive).  The run stops early
    when a single predator solves the whole prey pool and lives.  Once a
    pool is exhausted, predators not yet evaluated that epoch take no part
    in ranking.  With ``max_epochs == 0`` one
    evaluation pass still picks the returned best, but no stats are kept.

    Returns the best live predator seen in any epoch (highest remaining
    hit-points, earliest wins ties; if none ever survived, the dead one that
    lasted best) and per-epoch
    ``(epoch, alive_count, solved_count, best_hp)`` rows.
    """
    rng = np.random.default_rng(config.rng_seed)
    population = _random_population(config, rng)
    for k, tree in enumerate(list(seed_trees)[:config.predator_count]):
        population[k] = Predator(tree, config.initial_hp)

    best: Predator | None = None
    fallback: Predator | None = None
    stats = []
    for epoch in range(max(config.max_epochs, 1)):
        prey_pool = [gen_prey(config.root_range, rng) for _ in range(config.prey_count)]
        evaluated = []
        sweep = False
        for predator in population:
            solved_before = sum(q.solved for q in prey_pool)
            if solved_before == len(prey_pool):
                break
            evaluate_predator(predator, prey_pool, config, rng, monitor=monitor, epoch=epoch)
            evaluated.append(predator)
            if predator.alive and solved_before == 0 and all(q.solved for q in prey_pool):
                sweep = True
        survivors = [p for p in evaluated if p.alive]
        for p in survivors:
            if best is None or p.hit_points > best.hit_points:
                best = Predator(p.tree, p.hit_points, p.alive)
        for p in evaluated:
            if fallback is None or _fallback_key(p) > _fallback_key(fallback):
                fallback = Predator(p.tree, p.hit_points, p.alive)
        if monitor is not None:
            monitor.on_epoch_end(epoch, population, prey_pool)
        if config.max_epochs == 0:
            break
        solved = sum(q.solved for q in prey_pool)
        best_hp = max((p.hit_points for p in survivors), default=0.0)
        stats.append((epoch, len(survivors), solved, best_hp))
        if sweep or epoch == config.max_epochs - 1:
            break
        if len(survivors) >= 2:
            population = recombine(survivors, config, rng)
            if monitor is not None:
                monitor.on_recombine(epoch, survivors, population)
        else:
            population = _random_population(config, rng)
    return CoevolutionResult(best if best is not None else fallback, stats)


def success_rate(p: Predator | Tree, trials: int, config: CoevoConfig,
                 rng: np.random.Generator) -> float:
    """Fraction of ``trials`` fresh prey for which the formula returns a root."""
    if trials < 1:
        raise ValueError("trials must be positive")
    tree = p.tree if isinstance(p, Predator) else p
    hits = 0
    for _ in range(trials):
        prey = gen_prey(config.root_range, rng)
        try:
            value = sexpr.evaluate(tree, prey.bindings())
        except EvalError:
            continue
        hits += prey.matches(value, config.accuracy_tolerance)
    return hits / trials
