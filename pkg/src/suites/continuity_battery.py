"""
Continuity probe battery and the entry-level contracts over LC pairs.

A violation found on a builtin, sgn-free expression is a law failure (the
expression is continuous, so the evaluator is wrong). A violation on a user
expression, or on anything containing sgn, is a genuine refutation and is
tallied as kind "violation".
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable

import numpy as np

from src.cauchy_schwarz import ConsistencyFault
from src.continuity import (
    Expr,
    builtin_dot_fixed,
    builtin_prod2,
    builtin_sum,
    entries_small_check,
    format_expr,
    norm_bridge,
    probe,
    probe_to_dict,
)
from src.generate import (
    RunConfig,
    random_dim,
    random_direction,
    random_lc_vec,
    random_small_lc,
    random_vec,
    stream_rng,
)
from src.hyperreal import LC
from src.report import Report
from src.scalar import format_rat
from src.vector import LC_FIELD, Vec, vec_add, vec_sub

log = logging.getLogger(__name__)

GROUP = "continuity"
STREAM = 800
DOT_FIXED_DIM = 3


def continuity_check_name(source: str) -> str:
    return f"continuous {source}"


def check_probe(
    report: Report,
    index: int,
    expr: Expr,
    source: str,
    x: Vec[Fraction],
    h: Vec[Fraction],
    k: int,
    *,
    user: bool,
    line: int | None = None,
    detail: bool = False,
) -> None:
    """Raises ArityError or ValueError for a probe that does not fit the expression."""
    kind = "violation" if user or expr.has_sgn else "law"
    result = probe(expr, x, h, k)
    label = f"x={x} h={h} k={k} diff={result.diff}"
    report.check(continuity_check_name(source), GROUP, kind).record(not result.violation, label)
    if detail:
        where = f"line {line}: " if line is not None else ""
        verdict = "VIOLATION" if result.violation else "small"
        report.add_case(
            index,
            f"{where}x={x} h={h} k={k} -> f(x)-f(y) = {result.diff} ({verdict})",
            line=line,
            expr=format_expr(expr),
            **probe_to_dict(result),
        )


def check_lc_pair(report: Report, x: Vec[LC], y: Vec[LC]) -> None:
    """entries_small_check and norm_bridge; both raise ConsistencyFault on a broken contract."""
    label = f"x={x} y={y}"
    entries = entries_small_check(x, y)
    report.check("metric_small_implies_entries_small", GROUP).record(
        not entries.metric_small or all(entries.entry_small), label
    )
    bridge = norm_bridge(vec_sub(x, y))
    report.check("norm_small_implies_max_abs_small", GROUP).record(
        not bridge.norm_sq_small or bridge.max_abs_sq_small, label
    )


# ---------------------------------------------------------------------------
# Generated battery
# ---------------------------------------------------------------------------

def builtin_battery(rng: np.random.Generator, magnitude: int) -> list[tuple[str, Expr]]:
    """sum(3) first, then sum(n) for the rest of 1..6, prod2 and one dot_fixed."""
    exprs = [("sum(3)", builtin_sum(3))]
    exprs += [(f"sum({n})", builtin_sum(n)) for n in range(1, 7) if n != 3]
    exprs.append(("prod2", builtin_prod2()))
    c = random_vec(rng, DOT_FIXED_DIM, magnitude)
    exprs.append((f"dot_fixed([{', '.join(format_rat(q) for q in c.entries)}])", builtin_dot_fixed(c)))
    return exprs


def generated_probes(
    rng: np.random.Generator, expr: Expr, config: RunConfig
) -> Iterable[tuple[Vec[Fraction], Vec[Fraction], int]]:
    orders = sorted(set(config.probe_orders))
    for _ in range(config.cases):
        x = random_vec(rng, expr.arity, config.magnitude)
        h = random_direction(rng, expr.arity, config.magnitude)
        for k in orders:
            yield x, h, k


def generated_lc_pairs(rng: np.random.Generator, config: RunConfig) -> Iterable[tuple[Vec[LC], Vec[LC]]]:
    """Mixed valuations: half the pairs differ by an infinitesimal vector."""
    for i in range(config.cases):
        n = random_dim(rng, config.dims)
        x = random_lc_vec(rng, n, config.magnitude, exponents=(-1, 3))
        if i % 2:
            y = random_lc_vec(rng, n, config.magnitude, exponents=(-1, 3))
        else:
            delta = Vec(tuple(random_small_lc(rng, config.magnitude) for _ in range(n)), LC_FIELD)
            y = vec_add(x, delta)
        yield x, y


def run_generated(report: Report, config: RunConfig) -> None:
    rng = stream_rng(config.seed, STREAM)
    index = 0
    for source, expr in builtin_battery(rng, config.magnitude):
        log.info("probing %s", source)
        for x, h, k in generated_probes(rng, expr, config):
            try:
                check_probe(report, index, expr, source, x, h, k, user=False)
            except ConsistencyFault as exc:
                report.add_fault(f"{source}: {exc}")
            index += 1
    for x, y in generated_lc_pairs(rng, config):
        try:
            check_lc_pair(report, x, y)
        except ConsistencyFault as exc:
            report.add_fault(str(exc))
