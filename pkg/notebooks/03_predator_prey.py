# %% [markdown]
# # Coevolving root formulas against random quadratics
#
# Prey are monic quadratics expanded from two random roots.  Predators are
# formula trees over A, B, C.  A predator loses 1 hit-point for each root it
# gets right and 10 for each miss.  It dies at zero hit-points or on any
# evaluation error.

# %%
import numpy as np

from quadevo import sexpr
from quadevo.coevolution import (CoevoConfig, Predator, evaluate_predator, gen_prey,
                                 run_coevolution, success_rate)

rng = np.random.default_rng(1)
prey = gen_prey((-10, 10), rng)
print(prey)

# %% [markdown]
# ## Scoring single predators against the same prey pool

# %%
config = CoevoConfig()
pool = [gen_prey(config.root_range, rng) for _ in range(config.prey_count)]
candidates = {
    "quadratic formula": sexpr.quadratic_formula_tree("+"),
    "constant 0": sexpr.Constant(0.0),
    "identifier B": sexpr.Identifier("B"),
    "half of -B": sexpr.parse("(/ (- 0 B) 2)"),
    "divides by zero": sexpr.parse("(/ A (- B B))"),
}
for name, tree in candidates.items():
    p = Predator(tree, config.initial_hp)
    evaluate_predator(p, [type(q)(**vars(q)) for q in pool], config, np.random.default_rng(0))
    rate = success_rate(tree, 1000, config, np.random.default_rng(2))
    print(f"{name:18s} hp={p.hit_points:6.1f} alive={p.alive!s:5s} success={rate:.3f}")

# %% [markdown]
# ## A full run
# With the default hit-point settings, ten misses kill a predator.  Most
# random formulas die in their first epoch and the population is reseeded.
# If the quadratic formula is injected it survives and comes back as the best.

# %%
for inject in (False, True):
    cfg = CoevoConfig(max_epochs=30, rng_seed=7)
    seeds = [sexpr.quadratic_formula_tree("+")] if inject else []
    best, stats = run_coevolution(cfg, seed_trees=seeds)
    print("inject" if inject else "random", "best:", best.expression, "hp", best.hit_points)
    print("  first epochs (epoch, alive, solved, best_hp):", stats[:3])

# %% [markdown]
# ## A gentler economy
# With only five evaluations per epoch, every formula that evaluates cleanly
# survives, so recombination has material to work with.

# %%
cfg = CoevoConfig(evaluations_per_epoch=5, max_epochs=40, rng_seed=3)
best, stats = run_coevolution(cfg)
print("best:", best.expression, "hp", best.hit_points)
print("success rate:", success_rate(best, 1000, cfg, np.random.default_rng(4)))
for row in stats[::10]:
    print(row)
