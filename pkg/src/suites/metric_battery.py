"""
Metric-axiom battery over rational triples.

Every triple is decided exactly with sqrt_sum_leq. The fixed-precision
distances from approx_sqrt are compared as an independent oracle: with
r ≤ d < r + 2⁻ᵖ for each distance, d(x,y) ≤ d(x,z) + d(z,y) forces
r_xy < r_xz + r_zy + 2·2⁻ᵖ.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from src.cauchy_schwarz import MetricReport, metric_axioms_report
from src.generate import RunConfig, collinear_triple, random_dim, random_vec, stream_rng
from src.report import Report
from src.scalar import approx_sqrt, format_rat
from src.vector import Vec, eu_norm_display, metric_sq, to_strings, vec_sub

GROUP = "metric"
ORACLE_BITS = 64
STREAM = 700

TripleKind = Literal["input", "random", "collinear", "coincident"]


def approx_triangle(x: Vec[Fraction], y: Vec[Fraction], z: Vec[Fraction], p: int = ORACLE_BITS) -> bool:
    ulp = Fraction(1, 1 << p)
    dxy, dxz, dzy = (approx_sqrt(metric_sq(a, b), p) for a, b in ((x, y), (x, z), (z, y)))
    return dxy < dxz + dzy + 2 * ulp


def check_triple(
    report: Report,
    index: int,
    x: Vec[Fraction],
    y: Vec[Fraction],
    z: Vec[Fraction],
    *,
    kind: TripleKind = "input",
    line: int | None = None,
    detail: bool = False,
) -> MetricReport:
    label = f"x={x} y={y} z={z}"
    result = metric_axioms_report(x, y, z)
    report.check("commutative", GROUP).record(result.commutative, label)
    report.check("positive_definite", GROUP).record(result.positive_definite, label)
    report.check("triangle", GROUP).record(result.triangle, label)
    report.check("approx_triangle_agrees", GROUP).record(approx_triangle(x, y, z), label)
    if kind == "collinear":
        report.check("collinear_triangle_tight", GROUP).record(result.triangle_tight, label)
    if kind == "coincident":
        report.check("coincident_distance_zero", GROUP).record(result.coincident, label)

    if detail:
        flags = [name for name, on in (("tight", result.triangle_tight), ("x=y", result.coincident)) if on]
        distance = f"{float(eu_norm_display(vec_sub(x, y))):.6g}"
        where = f"line {line}: " if line is not None else ""
        summary = (
            f"{where}{x} {y} {z} -> d(x,y)^2 = {format_rat(metric_sq(x, y))} (d ~ {distance}), "
            f"{'all hold' if result.all_hold else 'FAILS'}"
            + (f" [{', '.join(flags)}]" if flags else "")
        )
        report.add_case(
            index,
            summary,
            line=line,
            x=to_strings(x),
            y=to_strings(y),
            z=to_strings(z),
            commutative=result.commutative,
            positive_definite=result.positive_definite,
            triangle=result.triangle,
            triangle_tight=result.triangle_tight,
            coincident=result.coincident,
            distance_xy=distance,
        )
    return result


def generated_triples(config: RunConfig):
    """Yield (kind, x, y, z). One case in four is collinear, one in eight has x = y."""
    rng = stream_rng(config.seed, STREAM)
    for i in range(config.cases):
        n = random_dim(rng, config.dims)
        if i % 4 == 0:
            yield ("collinear", *collinear_triple(rng, n, config.magnitude))
        elif i % 8 == 1:
            x = random_vec(rng, n, config.magnitude)
            yield "coincident", x, x, random_vec(rng, n, config.magnitude)
        else:
            yield ("random", *(random_vec(rng, n, config.magnitude) for _ in range(3)))
