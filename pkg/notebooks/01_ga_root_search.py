# %% [markdown]
# # Searching for a root of x^2 + 2x - 7 with a binary GA
#
# Each candidate root is a 20-bit chromosome: one sign bit, then a magnitude
# read as a fixed-point number with 14 fractional bits.  Fitness is |f(x)|,
# and the loop runs tournament selection, cut-point crossover and bit-flip
# mutation until some chromosome gets within the tolerance.

# %%
import math

import numpy as np

from quadevo import GaConfig, Quadratic, decode, run_ga

q = Quadratic(n_coef=2.0, m_coef=-7.0)
roots = (-1 - 2 * math.sqrt(2), -1 + 2 * math.sqrt(2))
print("true roots:", roots)

# %% [markdown]
# ## Decoding
# Bit 0 is the sign, and the rest is an unsigned integer scaled by 2**-fractional_bits.

# %%
bits = np.array([1, 0, 1, 1, 0, 1, 0, 0], dtype=np.uint8)
print(bits, "->", decode(bits, 4))

# %% [markdown]
# ## One run
# The history keeps the best-so-far individual for every generation,
# together with the number of fitness evaluations spent so far.

# %%
config = GaConfig(chromosome_length=20, fractional_bits=14, fitness_tolerance=1e-2,
                  max_generations=500, rng_seed=42)
best_x, best_f, history = run_ga(q, config)
print(f"best x = {best_x:.6f}, |f(x)| = {best_f:.2e}, generations = {history.generations_used}")
for generation, evaluations, _, _, fit, x in history.records:
    print(f"{generation:4d} {evaluations:6d} {fit:12.6f} {x:10.5f}")

# %% [markdown]
# ## Fitness against generations, over many seeds
# Median best-so-far |f(x)| per generation with tolerance 0, so that every
# run uses the whole budget.

# %%
curves = []
for seed in range(20):
    cfg = GaConfig(fitness_tolerance=0.0, max_generations=200, rng_seed=seed,
                   mutation_probability=0.05)
    _, _, h = run_ga(q, cfg)
    curves.append([f for _, f, _ in h.best_so_far])
median = np.median(np.array(curves), axis=0)
for generation in (0, 5, 10, 25, 50, 100, 200):
    print(f"generation {generation:3d}: median best |f| = {median[generation]:.3e}")

# %% [markdown]
# ## Mutation operators
# Count how many of 50 seeds reach |f| <= 1e-2 for each operator.

# %%
for mode in ("flip", "interchange", "reverse"):
    for p in (0.01, 0.05):
        hits = sum(run_ga(q, GaConfig(mutation_mode=mode, mutation_probability=p,
                                      rng_seed=s))[1] <= 1e-2 for s in range(50))
        print(f"{mode:12s} p={p:<5} {hits}/50")
