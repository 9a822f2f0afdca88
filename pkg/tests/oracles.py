"""Reference computations kept independent of the package code paths."""

import math


def all_decodings(length, fractional_bits):
    """Every value a chromosome of ``length`` bits can take, via string bit parsing."""
    values = []
    for k in range(2 ** length):
        bits = format(k, f"0{length}b")
        sign = -1 if bits[0] == "1" else 1
        values.append(sign * int(bits[1:], 2) / 2 ** fractional_bits)
    return values


def global_best_fitness(n, m, length, fractional_bits):
    return min(abs(x * x + n * x + m) for x in all_decodings(length, fractional_bits))


def closed_form_roots(a, b, c):
    """Real roots of ``a x^2 + b x + c`` in (minus, plus) order; requires b^2 >= 4ac."""
    disc = math.sqrt(b * b - 4 * a * c)
    return (-b - disc) / (2 * a), (-b + disc) / (2 * a)


def tree_is_wellformed(tree, max_depth):
    """Walk a tree by attribute names only and check the grammar and depth bound."""
    kind = type(tree).__name__
    if kind == "Identifier":
        ok = isinstance(tree.name, str) and len(tree.name) == 1 and tree.name.isascii() \
            and tree.name.isalpha()
        return ok and max_depth >= 1
    if kind == "Constant":
        return isinstance(tree.value, float) and math.isfinite(tree.value) and max_depth >= 1
    if max_depth < 2:
        return False
    if kind == "UnaryOp":
        return tree.op in ("&", "^") and tree_is_wellformed(tree.child, max_depth - 1)
    if kind == "BinaryOp":
        return tree.op in ("+", "-", "*", "/") \
            and tree_is_wellformed(tree.left, max_depth - 1) \
            and tree_is_wellformed(tree.right, max_depth - 1)
    return False
