"""
Cauchy–Schwarz battery: classify, certify and replay vector pairs.

check_pair is the per-pair routine shared by file input and the generated
battery. The generated battery alternates random pairs with constructed
dependent pairs (including a = 0 and v = 0) and cross-checks every exact gap
against a 256-bit floating evaluation.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Literal

import mpmath

from src.cauchy_schwarz import (
    CsCertificate,
    Dependent,
    Strict,
    certificate_to_dict,
    classify,
    cs1_gap,
    cs2_holds,
    cs2_tight,
    dependence_witness,
    first_ratio_witness,
    mp_cs1_gap,
    replay_proof,
    replay_to_dict,
    verify_certificate,
)
from src.generate import RunConfig, dependent_pair, random_dim, random_vec, stream_rng
from src.report import Report
from src.scalar import format_rat, mp_sqrt, mp_value
from src.vector import Vec, dot, scalar_mul, to_strings, vec_equal, zvecp

log = logging.getLogger(__name__)

GROUP = "cauchy-schwarz"
MP_BITS = 256
MP_MARGIN_EXP = -200
STREAM = 600
RESCALE = Fraction(-3, 2)

PairKind = Literal["input", "random", "dependent"]


def _cert_text(cert: CsCertificate) -> str:
    if isinstance(cert, Dependent):
        return f"Dependent({format_rat(cert.a)})"
    if isinstance(cert, Strict):
        return f"Strict({format_rat(cert.gap)})"
    return "ZeroU" if cert.kind == "zero_u" else "ZeroV"


def mp_agrees(gap: Fraction, approx: mpmath.mpf, scale: Fraction = Fraction(1)) -> bool | None:
    """
    Exact and floating verdicts on gap > 0, or None inside the margin.

    The margin is 2⁻²⁰⁰ relative to max(1, ⟨u,u⟩⟨v,v⟩), the size of the terms
    whose rounding errors the floating gap carries.
    """
    with mpmath.workprec(MP_BITS):
        margin = mpmath.ldexp(mp_value(max(Fraction(1), scale), MP_BITS), MP_MARGIN_EXP)
    if approx > margin:
        return gap > 0
    if approx < -margin:
        return False
    return None


def mp_cs2_agrees(u: Vec[Fraction], v: Vec[Fraction]) -> bool:
    """The norm form ‖u‖‖v‖ − |⟨u,v⟩| in 256-bit floats is never clearly negative."""
    uu, vv, uv = dot(u, u), dot(v, v), dot(u, v)
    with mpmath.workprec(MP_BITS):
        slack = mp_sqrt(uu, MP_BITS) * mp_sqrt(vv, MP_BITS) - abs(mp_value(uv, MP_BITS))
        margin = mpmath.ldexp(mp_value(max(Fraction(1), abs(uv)), MP_BITS), MP_MARGIN_EXP)
    return slack >= -margin


def check_pair(
    report: Report,
    index: int,
    u: Vec[Fraction],
    v: Vec[Fraction],
    *,
    kind: PairKind = "input",
    line: int | None = None,
    witness: Fraction | None = None,
    detail: bool = False,
    replay_detail: bool = False,
) -> CsCertificate:
    """
    Run every Cauchy–Schwarz check on one pair and tally it on the report.

    `witness` is the constructed a of a dependent pair. Raises DimensionError
    for mismatched dimensions and ConsistencyFault when a theorem fails.
    """
    label = f"u={u} v={v}"
    gap = cs1_gap(u, v)
    report.check("cs1_nonnegative", GROUP).record(True, label)

    cert = classify(u, v)
    report.check("certificate_verifies", GROUP).record(verify_certificate(u, v, cert), label)
    report.check("strict_iff_positive_gap", GROUP).record(isinstance(cert, Strict) == (gap > 0), label)
    report.check("cs2_holds", GROUP).record(cs2_holds(u, v), label)
    report.check("cs2_tight_iff_not_strict", GROUP).record(
        cs2_tight(u, v) == (not isinstance(cert, Strict)), label
    )
    report.check("mp_gap_agrees", GROUP).record(
        mp_agrees(gap, mp_cs1_gap(u, v, MP_BITS), dot(u, u) * dot(v, v)), label
    )
    report.check("mp_cs2_agrees", GROUP).record(mp_cs2_agrees(u, v), label)

    if isinstance(cert, Dependent):
        report.check("witness_recovers_u", GROUP).record(vec_equal(u, scalar_mul(cert.a, v)), label)
        report.check("classify_scale_consistent", GROUP).record(
            classify(scalar_mul(RESCALE, u), v) == Dependent(RESCALE * cert.a), label
        )
    if not zvecp(v) and not isinstance(cert, Strict):
        report.check("first_ratio_agrees", GROUP).record(
            first_ratio_witness(u, v) == dependence_witness(u, v), label
        )
    if kind == "dependent":
        report.check("dependent_not_strict", GROUP).record(not isinstance(cert, Strict), label)
        if witness is not None and not zvecp(v):
            report.check("constructed_witness_recovered", GROUP).record(
                dependence_witness(u, v) == witness, label
            )

    replay = replay_proof(u, v)
    report.check("replay_all_hold", GROUP).record(replay.all_hold, label)

    if detail or replay_detail:
        where = f"line {line}: " if line is not None else ""
        verdict = "holds" if replay.all_hold else "FAILS"
        summary = f"{where}{u} {v} -> {_cert_text(cert)}, replay {verdict}"
        if replay_detail:
            summary += "".join(
                f"\n        {s.name:<12s} {'ok' if s.holds else 'FAIL'}" for s in replay.steps
            )
        extra = {"replay": replay_to_dict(replay)} if replay_detail else {}
        report.add_case(
            index,
            summary,
            line=line,
            u=to_strings(u),
            v=to_strings(v),
            certificate=certificate_to_dict(cert),
            replay_all_hold=replay.all_hold,
            **extra,
        )
    return cert


def generated_pairs(config: RunConfig):
    """Yield (kind, u, v, witness): even cases random, odd cases dependent."""
    rng = stream_rng(config.seed, STREAM)
    for i in range(config.cases):
        n = random_dim(rng, config.dims)
        if i % 2:
            u, v, a = dependent_pair(rng, n, config.magnitude)
            yield "dependent", u, v, a
        else:
            yield "random", random_vec(rng, n, config.magnitude), random_vec(rng, n, config.magnitude), None
