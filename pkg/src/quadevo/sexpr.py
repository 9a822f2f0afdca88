"""Prefix S-expression formulas over single-letter identifiers and reals.

Grammar::

    expr  := IDENT | NUMBER | "(" binop expr expr ")" | "(" unop expr ")"
    binop := "+" | "-" | "*" | "/"      (also "−", "×", "÷")
    unop  := "&" (square root) | "^" (square)

Trees are immutable dataclasses, so subtrees can be shared freely.
"""

from __future__ import annotations

import math
import re
import string
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

BINARY_OPS = ("+", "-", "*", "/")
UNARY_OPS = ("&", "^")
_SPELLINGS = {"+": "+", "-": "-", "−": "-", "*": "*", "×": "*", "/": "/", "÷": "/",
              "&": "&", "^": "^"}
_LETTERS = frozenset(string.ascii_letters)


@dataclass(frozen=True)
class Identifier:
    name: str

    def __post_init__(self):
        if self.name not in _LETTERS:
            raise ValueError(f"identifier must be a single letter, got {self.name!r}")


@dataclass(frozen=True)
class Constant:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not math.isfinite(self.value):
            raise ValueError(f"constant must be finite, got {self.value!r}")


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Tree"
    right: "Tree"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary operator {self.op!r}")


@dataclass(frozen=True)
class UnaryOp:
    op: str
    child: "Tree"

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary operator {self.op!r}")


Tree = Union[Identifier, Constant, BinaryOp, UnaryOp]
LEAF_TYPES = (Identifier, Constant)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvalError(ArithmeticError):
    """Evaluation failure; ``path`` is the child-index path to the offending node."""

    KINDS = ("DivisionByZero", "NegativeSqrt", "UnboundIdentifier", "NonFinite")

    def __init__(self, kind: str, path: tuple[int, ...]):
        super().__init__(f"{kind} at node {list(path)}")
        self.kind = kind
        self.path = path


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([()])|([^\s()]+))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2)
        tokens.append((tok, m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    return tokens


def _atom(tok: str, pos: int) -> Tree:
    if tok in _LETTERS:
        return Identifier(tok)
    try:
        value = float(tok)
    except ValueError:
        if tok.isalpha():
            raise ParseError(f"identifier {tok!r} is not a single letter", pos) from None
        if tok in _SPELLINGS:
            raise ParseError(f"operator {tok!r} outside parentheses", pos) from None
        raise ParseError(f"unknown token {tok!r}", pos) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite constant {tok!r}", pos)
    return Constant(value)


def parse(text: str) -> Tree:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    end = len(text)

    def expr(i: int) -> tuple[Tree, int]:
        if i >= len(tokens):
            raise ParseError("unexpected end of input", end)
        tok, pos = tokens[i]
        if tok == ")":
            raise ParseError("unbalanced ')'", pos)
        if tok != "(":
            return _atom(tok, pos), i + 1
        if i + 1 >= len(tokens):
            raise ParseError("unbalanced '('", pos)
        op_tok, op_pos = tokens[i + 1]
        if op_tok not in _SPELLINGS:
            raise ParseError(f"unknown operator {op_tok!r}", op_pos)
        op = _SPELLINGS[op_tok]
        children = []
        j = i + 2
        while j < len(tokens) and tokens[j][0] != ")":
            child, j = expr(j)
            children.append(child)
        if j >= len(tokens):
            raise ParseError("unbalanced '('", pos)
        arity = 1 if op in UNARY_OPS else 2
        if len(children) != arity:
            raise ParseError(
                f"operator {op_tok!r} takes {arity} operand(s), got {len(children)}", op_pos)
        node = UnaryOp(op, children[0]) if arity == 1 else BinaryOp(op, *children)
        return node, j + 1

    tree, i = expr(0)
    if i != len(tokens):
        raise ParseError(f"trailing token {tokens[i][0]!r}", tokens[i][1])
    return tree


def serialize(tree: Tree) -> str:
    if isinstance(tree, Identifier):
        return tree.name
    if isinstance(tree, Constant):
        return repr(float(tree.value))
    if isinstance(tree, UnaryOp):
        return f"({tree.op} {serialize(tree.child)})"
    return f"({tree.op} {serialize(tree.left)} {serialize(tree.right)})"


# -- evaluation ------------------------------------------------------------

def evaluate(tree: Tree, env: dict[str, float],
             trace: Callable[[Tree, float], None] | None = None) -> float:
    """Post-order evaluation of ``tree`` under ``env``.

    ``trace`` (if given) is called with each node and its value as soon as
    that value is known.  Raises :class:`EvalError` on division by zero,
    square root of a negative, an unbound identifier, or any non-finite
    intermediate.
    """

    def visit(node: Tree, path: tuple[int, ...]) -> float:
        if isinstance(node, Constant):
            value = node.value
        elif isinstance(node, Identifier):
            if node.name not in env:
                raise EvalError("UnboundIdentifier", path)
            value = float(env[node.name])
        elif isinstance(node, UnaryOp):
            arg = visit(node.child, path + (0,))
            if node.op == "^":
                value = arg * arg
            else:
                if arg < 0:
                    raise EvalError("NegativeSqrt", path)
                value = math.sqrt(arg)
        else:
            lhs = visit(node.left, path + (0,))
            rhs = visit(node.right, path + (1,))
            if node.op == "+":
                value = lhs + rhs
            elif node.op == "-":
                value = lhs - rhs
            elif node.op == "*":
                value = lhs * rhs
            else:
                if rhs == 0:
                    raise EvalError("DivisionByZero", path)
                value = lhs / rhs
        if not math.isfinite(value):
            raise EvalError("NonFinite", path)
        if trace is not None:
            trace(node, value)
        return value

    return visit(tree, ())


# -- structure -------------------------------------------------------------

def children(tree: Tree) -> tuple[Tree, ...]:
    if isinstance(tree, BinaryOp):
        return (tree.left, tree.right)
    if isinstance(tree, UnaryOp):
        return (tree.child,)
    return ()


def depth(tree: Tree) -> int:
    """Number of levels; a single leaf has depth 1."""
    return 1 + max((depth(c) for c in children(tree)), default=0)


def size(tree: Tree) -> int:
    return 1 + sum(size(c) for c in children(tree))


def nodes(tree: Tree) -> list[tuple[tuple[int, ...], Tree]]:
    """All ``(path, subtree)`` pairs in pre-order."""
    out = []
    stack = [((), tree)]
    while stack:
        path, node = stack.pop()
        out.append((path, node))
        kids = children(node)
        for k in range(len(kids) - 1, -1, -1):
            stack.append((path + (k,), kids[k]))
    return out


def subtree(tree: Tree, path: tuple[int, ...]) -> Tree:
    for k in path:
        tree = children(tree)[k]
    return tree


def replace(tree: Tree, path: tuple[int, ...], new: Tree) -> Tree:
    """Copy of ``tree`` with the node at ``path`` swapped for ``new``."""
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(tree, UnaryOp):
        return UnaryOp(tree.op, replace(tree.child, rest, new))
    if isinstance(tree, BinaryOp):
        if head == 0:
            return BinaryOp(tree.op, replace(tree.left, rest, new), tree.right)
        return BinaryOp(tree.op, tree.left, replace(tree.right, rest, new))
    raise IndexError(f"path {path} descends below a leaf")


def identifiers(tree: Tree) -> set[str]:
    return {n.name for _, n in nodes(tree) if isinstance(n, Identifier)}


def is_valid(tree, max_depth: int | None = None) -> bool:
    """Structural check against the grammar (and an optional depth bound)."""
    if isinstance(tree, Identifier):
        ok = tree.name in _LETTERS
    elif isinstance(tree, Constant):
        ok = isinstance(tree.value, float) and math.isfinite(tree.value)
    elif isinstance(tree, UnaryOp):
        ok = tree.op in UNARY_OPS and is_valid(tree.child)
    elif isinstance(tree, BinaryOp):
        ok = tree.op in BINARY_OPS and is_valid(tree.left) and is_valid(tree.right)
    else:
        return False
    return ok and (max_depth is None or depth(tree) <= max_depth)


# -- generation ------------------------------------------------------------

def random_leaf(identifiers, constant_range: tuple[float, float],
                rng: np.random.Generator) -> Tree:
    letters = sorted(identifiers)
    if rng.integers(2) == 0:
        return Identifier(letters[rng.integers(len(letters))])
    return Constant(float(rng.uniform(*constant_range)))


def random_tree(max_depth: int, identifiers, constant_range: tuple[float, float],
                rng: np.random.Generator) -> Tree:
    """Grow a tree of depth at most ``max_depth``.

    Above the depth limit each node is a leaf, a binary or a unary operator
    with equal probability.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if not identifiers:
        raise ValueError("need at least one identifier")

    def grow(level: int) -> Tree:
        kind = 0 if level == max_depth else rng.integers(3)
        if kind == 0:
            return random_leaf(identifiers, constant_range, rng)
        if kind == 1:
            op = BINARY_OPS[rng.integers(len(BINARY_OPS))]
            left = grow(level + 1)
            return BinaryOp(op, left, grow(level + 1))
        return UnaryOp(UNARY_OPS[rng.integers(len(UNARY_OPS))], grow(level + 1))

    return grow(1)


def quadratic_formula_tree(sign: str = "+") -> Tree:
    """``(-B ± sqrt(B^2 - 4AC)) / 2A`` over identifiers A, B, C."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    a, b, c = Identifier("A"), Identifier("B"), Identifier("C")
    discriminant = BinaryOp("-", UnaryOp("^", b),
                            BinaryOp("*", Constant(4.0), BinaryOp("*", a, c)))
    numerator = BinaryOp(sign, BinaryOp("-", Constant(0.0), b), UnaryOp("&", discriminant))
    return BinaryOp("/", numerator, BinaryOp("*", Constant(2.0), a))


def load(path) -> list[Tree]:
    """Read one expression per non-blank line."""
    with open(path, encoding="utf-8") as fh:
        return [parse(line) for line in fh if line.strip()]


def save(trees, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t in trees:
            fh.write(serialize(t) + "\n")
