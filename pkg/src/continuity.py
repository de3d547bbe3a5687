"""
Continuity of ℝⁿ → ℝ expressions, probed with infinitesimals.

A function f is continuous at a standard point x when f(x) − f(y) is
infinitesimal for every y with d(x, y) infinitesimal. Quantifying over every
such y is not computable, so a probe picks one: y = x + εᵏ·h for a rational
direction h and an order k ≥ 1, evaluates f over the hyperreal field and reads
the valuation of the difference. A probe can refute continuity; it cannot
prove it.

Expression grammar (no division, so evaluation stays exact and total):

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | atom
    atom   := NUMBER ["/" NUMBER] | "x" INDEX | "sgn" "(" expr ")" | "(" expr ")"

Variables are x1..xn (1-based in text, 0-based in Var nodes).

Usage:
    from src.continuity import parse_expr, probe
    from src.vector import vec

    e = parse_expr("x1 * x2", 2)
    probe(e, vec([1, 2]), vec([1, 1]), 1).diff_small     # True
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence, Union

from src.cauchy_schwarz import ConsistencyFault
from src.hyperreal import LC, is_i_limited, is_i_small, sign
from src.scalar import DomainError, Rat, format_rat, parse_rat
from src.vector import (
    LC_FIELD,
    Vec,
    check_dims,
    lift,
    max_abs,
    metric_sq,
    norm_sq,
    vec_sub,
    zvecp,
)

log = logging.getLogger(__name__)


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ArityError(ValueError):
    """A variable index or a point dimension disagrees with the declared arity."""


# ---------------------------------------------------------------------------
# Syntax tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: Rat


@dataclass(frozen=True)
class Add:
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub:
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul:
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class Sgn:
    operand: Node


Node = Union[Var, Const, Add, Sub, Mul, Neg, Sgn]


@dataclass(frozen=True)
class Expr:
    """An expression tree together with the arity n of the domain ℝⁿ."""

    root: Node
    arity: int

    def __post_init__(self) -> None:
        for node in walk(self.root):
            if isinstance(node, Var) and not 0 <= node.index < self.arity:
                raise ArityError(
                    f"variable x{node.index + 1} out of range for arity {self.arity}"
                )

    @property
    def has_sgn(self) -> bool:
        return any(isinstance(node, Sgn) for node in walk(self.root))

    def __str__(self) -> str:
        return format_expr(self)


def walk(node: Node) -> Iterator[Node]:
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, (Add, Sub, Mul)):
            stack.extend((n.right, n.left))
        elif isinstance(n, (Neg, Sgn)):
            stack.append(n.operand)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

RE_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>x\d+)|(?P<fn>sgn)|(?P<op>[-+*()]))"
)

Token = tuple[Literal["num", "var", "fn", "op", "end"], str, int]


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = RE_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))  # type: ignore[arg-type]
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, arity: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.arity = arity

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ExprSyntaxError(f"expected {op!r}, found {value or 'end of input'!r}", pos)

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            node = Mul(node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Node:
        kind, value, pos = self.take()
        if kind == "num":
            try:
                return Const(parse_rat(value.replace(" ", "")))
            except DomainError as exc:
                raise ExprSyntaxError(str(exc), pos) from exc
        if kind == "var":
            index = int(value[1:]) - 1
            if not 0 <= index < self.arity:
                raise ArityError(
                    f"variable {value} at position {pos} out of range for arity {self.arity}"
                )
            return Var(index)
        if kind == "fn":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Sgn(inner)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_expr(text: str, arity: int) -> Expr:
    if arity < 0:
        raise ArityError(f"arity must be nonnegative, got {arity}")
    parser = _Parser(text, arity)
    root = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ExprSyntaxError(f"trailing input {value!r}", pos)
    return Expr(root, arity)


_PRECEDENCE = {Add: 1, Sub: 1, Mul: 2, Neg: 3}


def _fmt(node: Node, parent: int = 0, right: bool = False) -> str:
    if isinstance(node, Var):
        return f"x{node.index + 1}"
    if isinstance(node, Const):
        text = format_rat(node.value)
        return f"({text})" if node.value < 0 else text
    if isinstance(node, Sgn):
        return f"sgn({_fmt(node.operand)})"
    prec = _PRECEDENCE[type(node)]
    if isinstance(node, Neg):
        text = "-" + _fmt(node.operand, prec)
    else:
        sym = {Add: " + ", Sub: " - ", Mul: " * "}[type(node)]
        text = _fmt(node.left, prec) + sym + _fmt(node.right, prec, right=True)
    if prec < parent or (right and prec == parent and not isinstance(node, Neg)):
        return f"({text})"
    return text


def format_expr(e: Expr | Node) -> str:
    return _fmt(e.root if isinstance(e, Expr) else e)


# ---------------------------------------------------------------------------
# Builtins
# ---------------------------------------------------------------------------

def builtin_sum(n: int) -> Expr:
    if n < 0:
        raise ArityError(f"sum needs n >= 0, got {n}")
    if n == 0:
        return Expr(Const(Fraction(0)), 0)
    node: Node = Var(0)
    for i in range(1, n):
        node = Add(node, Var(i))
    return Expr(node, n)


def builtin_prod2() -> Expr:
    return Expr(Mul(Var(0), Var(1)), 2)


def builtin_dot_fixed(c: Vec[Fraction]) -> Expr:
    """x ↦ ⟨c, x⟩ for a fixed rational c."""
    if c.dim == 0:
        return Expr(Const(Fraction(0)), 0)
    node: Node = Mul(Const(c[0]), Var(0))
    for i in range(1, c.dim):
        node = Add(node, Mul(Const(c[i]), Var(i)))
    return Expr(node, c.dim)


RE_BUILTIN = re.compile(r"^\s*(sum\s*\(\s*(\d+)\s*\)|prod2|dot_fixed\s*\((.*)\))\s*$")


def builtin(name: str) -> Expr:
    """Resolve "sum(n)", "prod2" or "dot_fixed([c1, c2, ...])"."""
    m = RE_BUILTIN.match(name)
    if not m:
        raise ExprSyntaxError(f"unknown builtin {name!r}", 0)
    if m.group(2) is not None:
        return builtin_sum(int(m.group(2)))
    if m.group(1) == "prod2":
        return builtin_prod2()
    body = m.group(3).strip().strip("[]")
    entries = [parse_rat(s.strip().strip('"')) for s in body.split(",") if s.strip()]
    return builtin_dot_fixed(Vec(tuple(entries)))


# ---------------------------------------------------------------------------
# Evaluation over the hyperreals
# ---------------------------------------------------------------------------

def _eval(node: Node, point: Sequence[LC]) -> LC:
    if isinstance(node, Var):
        return point[node.index]
    if isinstance(node, Const):
        return LC.constant(node.value)
    if isinstance(node, Add):
        return _eval(node.left, point) + _eval(node.right, point)
    if isinstance(node, Sub):
        return _eval(node.left, point) - _eval(node.right, point)
    if isinstance(node, Mul):
        return _eval(node.left, point) * _eval(node.right, point)
    if isinstance(node, Neg):
        return -_eval(node.operand, point)
    if isinstance(node, Sgn):
        return LC.constant(sign(_eval(node.operand, point)))
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(e: Expr, p: Vec[LC]) -> LC:
    if p.dim != e.arity:
        raise ArityError(f"point of dimension {p.dim} for arity {e.arity}")
    entries = tuple(LC.coerce(x) for x in p.entries)
    return _eval(e.root, entries)


# ---------------------------------------------------------------------------
# Probes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    x: Vec[Fraction]
    h: Vec[Fraction]
    k: int
    diff: LC
    metric_sq_small: bool
    diff_small: bool
    inputs_limited: bool

    @property
    def violation(self) -> bool:
        return self.metric_sq_small and not self.diff_small


def probe(e: Expr, x: Vec[Fraction], h: Vec[Fraction], k: int) -> ProbeResult:
    """
    Compare f at the standard point x with f at y = x + εᵏ·h.

    x must be rational (standard). A result with metric_sq_small and not
    diff_small is a continuity violation at x.
    """
    if x.field is LC_FIELD or h.field is LC_FIELD:
        raise ArityError("probe points and directions must be rational vectors")
    check_dims(x, h)
    if x.dim != e.arity:
        raise ArityError(f"probe point of dimension {x.dim} for arity {e.arity}")
    if zvecp(h):
        raise ValueError("probe direction must be nonzero")
    if k < 1:
        raise ValueError(f"probe order must be a positive integer, got {k}")

    step = LC.epsilon(k)
    xs = lift(x)
    ys = Vec(tuple(xi + step.scale(hi) for xi, hi in zip(xs.entries, h.entries)), LC_FIELD)
    diff = eval_expr(e, xs) - eval_expr(e, ys)
    result = ProbeResult(
        x=x,
        h=h,
        k=k,
        diff=diff,
        metric_sq_small=is_i_small(metric_sq(xs, ys)),
        diff_small=is_i_small(diff),
        inputs_limited=all(is_i_limited(c) for c in ys.entries),
    )
    if result.violation:
        log.info("continuity violation for %s at %s along %s (k=%d): diff = %s",
                 format_expr(e), x, h, k, diff)
    return result


def probe_battery(
    e: Expr,
    points: Sequence[Vec[Fraction]],
    directions: Sequence[Vec[Fraction]],
    orders: Iterable[int],
) -> list[ProbeResult]:
    """Every (point, direction, order) combination, ordered by those indices."""
    orders = sorted(set(orders))
    return [
        probe(e, x, h, k)
        for x in points
        for h in directions
        for k in orders
    ]


def probe_to_dict(r: ProbeResult) -> dict:
    return {
        "x": [format_rat(q) for q in r.x.entries],
        "h": [format_rat(q) for q in r.h.entries],
        "k": r.k,
        "diff": r.diff.to_pairs(),
        "metric_sq_small": r.metric_sq_small,
        "diff_small": r.diff_small,
        "inputs_limited": r.inputs_limited,
        "violation": r.violation,
    }


# ---------------------------------------------------------------------------
# Entry-level contracts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntriesCheck:
    metric_small: bool
    entry_small: tuple[bool, ...]


def entries_small_check(x: Vec[LC], y: Vec[LC]) -> EntriesCheck:
    """
    If the (squared) distance between x and y is infinitesimal, so is every
    coordinate difference. Squaring preserves smallness of nonnegatives, so
    metric_sq stands in for the metric.
    """
    check_dims(x, y)
    diff = vec_sub(x, y)
    metric_small = is_i_small(norm_sq(diff))
    entry_small = tuple(is_i_small(LC.coerce(d)) for d in diff.entries)
    if metric_small and not all(entry_small):
        raise ConsistencyFault(f"small metric with a non-small entry: {x} vs {y}")
    return EntriesCheck(metric_small, entry_small)


@dataclass(frozen=True)
class BridgeCheck:
    norm_sq_small: bool
    max_abs_sq_small: bool
    entries_sq_small: tuple[bool, ...]


def norm_bridge(z: Vec[LC]) -> BridgeCheck:
    """
    ‖z‖² ≥ max|zᵢ|² ≥ zᵢ², read at the valuation level:
    small norm² ⟹ small max_abs² ⟹ every zᵢ² small.
    """
    n_small = is_i_small(LC.coerce(norm_sq(z)))
    m = LC.coerce(max_abs(z))
    m_small = is_i_small(m * m)
    e_small = tuple(is_i_small(LC.coerce(c) * LC.coerce(c)) for c in z.entries)
    if n_small and not m_small:
        raise ConsistencyFault(f"small norm but large max-abs entry in {z}")
    if m_small and not all(e_small):
        raise ConsistencyFault(f"small max-abs but a large entry in {z}")
    return BridgeCheck(n_small, m_small, e_small)
