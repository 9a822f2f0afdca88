# %% [markdown]
# # Formula trees as S-expressions
#
# Formulas are prefix S-expressions: identifiers are single letters,
# constants are reals, `& x` is a square root and `^ x` a square.

# %%
from quadevo import sexpr
from quadevo.sexpr import EvalError, evaluate, parse, quadratic_formula_tree, serialize

tree = parse("(÷ (+ 0.089 0.563) X)")
print(tree)
print("canonical:", serialize(tree))
print("(+ 0.089 0.563) =", format(evaluate(tree.left, {}), ".10g"))
print("whole tree at X=5 =", format(evaluate(tree, {"X": 5}), ".10g"))

# %% [markdown]
# ## Evaluation order
# Children are always evaluated before their parent.

# %%
evaluate(tree, {"X": 5}, trace=lambda node, value: print(f"{serialize(node):28s} {value:.4f}"))

# %% [markdown]
# ## The quadratic formula as a tree
# Negation is written `(- 0 B)` because the grammar has no unary minus.

# %%
for sign in "+-":
    t = quadratic_formula_tree(sign)
    print(serialize(t), "->", evaluate(t, {"A": 1, "B": 2, "C": -7}))

# %% [markdown]
# ## Errors
# Division by zero, square roots of negatives, unbound letters and overflow
# all raise `EvalError` with the path of the offending node.

# %%
for text in ["(/ A (- B B))", "(& (- 0 4))", "(+ Q 1)", "(* 1e300 1e300)"]:
    try:
        evaluate(parse(text), {"A": 1, "B": 2})
    except EvalError as exc:
        print(f"{text:20s} {exc.kind:18s} at {list(exc.path)}")

# %% [markdown]
# ## Random trees

# %%
import numpy as np

rng = np.random.default_rng(0)
for _ in range(5):
    t = sexpr.random_tree(4, "ABC", (-5, 5), rng)
    print(sexpr.depth(t), serialize(t))
