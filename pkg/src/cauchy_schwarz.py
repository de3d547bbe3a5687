"""
Cauchy–Schwarz over rational vectors: exact decisions, certificates, proof
replay and the metric-space axioms.

    cs1_gap(u, v)        ⟨u,u⟩⟨v,v⟩ − ⟨u,v⟩²  (never negative)
    cs2_holds(u, v)      |⟨u,v⟩| ≤ ‖u‖‖v‖, decided in the squared domain
    classify(u, v)       ZeroU | ZeroV | Dependent(a) | Strict(gap)
    verify_certificate   re-derives a certificate's claim from scratch
    replay_proof(u, v)   evaluates every identity of the textbook proof chain
    triangle_holds       d(x,y) ≤ d(x,z) + d(z,y) via sqrt_sum_leq

Functions that decide a theorem assert it. If one ever comes out false the
arithmetic underneath is broken, and ConsistencyFault is raised instead of
returning a wrong answer.

The dependence witness is computed, a = ⟨u,v⟩/⟨v,v⟩. first_ratio_witness is
the other textbook strategy (divide by the first nonzero entry of v) and is
kept as an independent oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Union

import mpmath

from src.scalar import (
    Rat,
    format_rat,
    leq_sqrt,
    mp_value,
    rat_div,
    sqrt_leq,
    sqrt_sum_eq,
    sqrt_sum_leq,
)
from src.vector import (
    Vec,
    check_dims,
    dot,
    metric_sq,
    norm_sq,
    scalar_mul,
    vec_equal,
    vec_sub,
    zvecp,
)

log = logging.getLogger(__name__)


class ConsistencyFault(AssertionError):
    """A fact that is a theorem evaluated to false. Always a bug, never bad input."""


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroU:
    kind: Literal["zero_u"] = "zero_u"


@dataclass(frozen=True)
class ZeroV:
    kind: Literal["zero_v"] = "zero_v"


@dataclass(frozen=True)
class Dependent:
    """u = a·v componentwise."""

    a: Rat
    kind: Literal["dependent"] = "dependent"


@dataclass(frozen=True)
class Strict:
    """gap = ⟨u,u⟩⟨v,v⟩ − ⟨u,v⟩² > 0."""

    gap: Rat
    kind: Literal["strict"] = "strict"


CsCertificate = Union[ZeroU, ZeroV, Dependent, Strict]


def certificate_to_dict(cert: CsCertificate) -> dict[str, str]:
    out = {"kind": cert.kind}
    if isinstance(cert, Dependent):
        out["a"] = format_rat(cert.a)
    elif isinstance(cert, Strict):
        out["gap"] = format_rat(cert.gap)
    return out


# ---------------------------------------------------------------------------
# Decisions
# ---------------------------------------------------------------------------

def cs1_gap(u: Vec[Fraction], v: Vec[Fraction]) -> Rat:
    gap = dot(u, u) * dot(v, v) - dot(u, v) ** 2
    if gap < 0:
        raise ConsistencyFault(f"negative Cauchy-Schwarz gap {gap} for {u}, {v}")
    return gap


def cs2_holds(u: Vec[Fraction], v: Vec[Fraction]) -> bool:
    """|⟨u,v⟩| ≤ √(⟨u,u⟩⟨v,v⟩), which is ‖u‖‖v‖ since √ is multiplicative on nonnegatives."""
    check_dims(u, v)
    holds = leq_sqrt(abs(dot(u, v)), dot(u, u) * dot(v, v))
    if not holds:
        raise ConsistencyFault(f"Cauchy-Schwarz II fails for {u}, {v}")
    return holds


def cs2_tight(u: Vec[Fraction], v: Vec[Fraction]) -> bool:
    """|⟨u,v⟩| = ‖u‖‖v‖ exactly: both √P ≤ |⟨u,v⟩| and |⟨u,v⟩| ≤ √P."""
    check_dims(u, v)
    lhs = abs(dot(u, v))
    product = dot(u, u) * dot(v, v)
    return sqrt_leq(product, lhs) and leq_sqrt(lhs, product)


def dependence_witness(u: Vec[Fraction], v: Vec[Fraction]) -> Rat:
    """a = ⟨u,v⟩/⟨v,v⟩, the coefficient of the projection of u onto v."""
    return rat_div(dot(u, v), dot(v, v))


def first_ratio_witness(u: Vec[Fraction], v: Vec[Fraction]) -> Rat | None:
    """u_i / v_i at the first i with v_i ≠ 0, or None when v is zero."""
    check_dims(u, v)
    for a, b in zip(u.entries, v.entries):
        if b != 0:
            return a / b
    return None


def classify(u: Vec[Fraction], v: Vec[Fraction]) -> CsCertificate:
    check_dims(u, v)
    if zvecp(u):
        return ZeroU()
    if zvecp(v):
        return ZeroV()
    gap = cs1_gap(u, v)
    if gap > 0:
        return Strict(gap)
    a = dependence_witness(u, v)
    if not vec_equal(u, scalar_mul(a, v)):
        raise ConsistencyFault(
            f"zero gap but u != a*v with a = {format_rat(a)} for {u}, {v}"
        )
    return Dependent(a)


def verify_certificate(u: Vec[Fraction], v: Vec[Fraction], cert: CsCertificate) -> bool:
    check_dims(u, v)
    if isinstance(cert, ZeroU):
        return zvecp(u)
    if isinstance(cert, ZeroV):
        return zvecp(v)
    if isinstance(cert, Dependent):
        return vec_equal(u, scalar_mul(cert.a, v))
    if isinstance(cert, Strict):
        gap = dot(u, u) * dot(v, v) - dot(u, v) ** 2
        return cert.gap > 0 and cert.gap == gap
    return False


def mp_cs1_gap(u: Vec[Fraction], v: Vec[Fraction], bits: int = 256) -> mpmath.mpf:
    """The gap evaluated in `bits`-bit floating arithmetic, for cross-checking."""
    check_dims(u, v)
    with mpmath.workprec(bits):
        fu = [mp_value(x, bits) for x in u.entries]
        fv = [mp_value(x, bits) for x in v.entries]
        uu = mpmath.fsum(a * a for a in fu)
        vv = mpmath.fsum(b * b for b in fv)
        uv = mpmath.fsum(a * b for a, b in zip(fu, fv))
        return uu * vv - uv * uv


# ---------------------------------------------------------------------------
# Proof replay
# ---------------------------------------------------------------------------

Relation = Literal["=", "<=", "vec="]


@dataclass(frozen=True)
class ReplayStep:
    name: str
    lhs: Rat | Vec[Fraction]
    rhs: Rat | Vec[Fraction]
    relation: Relation
    holds: bool


@dataclass(frozen=True)
class ReplayReport:
    branch: Literal["nonzero_v", "zero_v"]
    steps: tuple[ReplayStep, ...] = field(default_factory=tuple)

    @property
    def all_hold(self) -> bool:
        return all(s.holds for s in self.steps)

    def step(self, name: str) -> ReplayStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)


def _record(name: str, lhs, rhs, relation: Relation) -> ReplayStep:
    if relation == "=":
        holds = lhs == rhs
    elif relation == "<=":
        holds = lhs <= rhs
    else:
        holds = vec_equal(lhs, rhs)
    if not holds:
        log.warning("replay step %s fails: %s %s %s", name, lhs, relation, rhs)
    return ReplayStep(name, lhs, rhs, relation, holds)


def replay_proof(u: Vec[Fraction], v: Vec[Fraction]) -> ReplayReport:
    """
    Evaluate the chain Axioms ⟹ CS1 ⟹ equality condition on a concrete pair.

    1. expand      ‖u − v‖² = ⟨u,u⟩ − 2⟨u,v⟩ + ⟨v,v⟩
    then, for v ≠ 0 and a = ⟨u,v⟩/⟨v,v⟩:
    2. nonneg      0 ≤ ‖u − a·v‖²
    3. project     ‖u − a·v‖² = ⟨u,u⟩ − ⟨u,v⟩²/⟨v,v⟩
    4. cs1         ⟨u,v⟩² ≤ ⟨u,u⟩⟨v,v⟩
    5. dependent   u = a·v, only when step 4 is tight

    Step 3 uses ⟨u,v⟩² in the numerator. The identity is sometimes printed
    with ⟨u,v⟩ alone, which is not even homogeneous in u.
    For v = 0 the chain collapses to the trivial 0 ≤ 0 after step 1.
    """
    check_dims(u, v)
    uu, uv, vv = dot(u, u), dot(u, v), dot(v, v)
    steps = [
        _record("expand", norm_sq(vec_sub(u, v)), uu - 2 * uv + vv, "="),
    ]
    if zvecp(v):
        steps.append(_record("cs1_trivial", uv * uv, uu * vv, "<="))
        return ReplayReport("zero_v", tuple(steps))

    a = uv / vv
    residual = norm_sq(vec_sub(u, scalar_mul(a, v)))
    steps.append(_record("nonneg", Fraction(0), residual, "<="))
    steps.append(_record("project", residual, uu - uv * uv / vv, "="))
    steps.append(_record("cs1", uv * uv, uu * vv, "<="))
    if uv * uv == uu * vv:
        steps.append(_record("dependent", u, scalar_mul(a, v), "vec="))
    return ReplayReport("nonzero_v", tuple(steps))


def replay_to_dict(report: ReplayReport) -> dict:
    def text(x) -> str | list[str]:
        if isinstance(x, Vec):
            return [format_rat(e) for e in x.entries]
        return format_rat(x)

    return {
        "branch": report.branch,
        "all_hold": report.all_hold,
        "steps": [
            {
                "name": s.name,
                "lhs": text(s.lhs),
                "relation": s.relation,
                "rhs": text(s.rhs),
                "holds": s.holds,
            }
            for s in report.steps
        ],
    }


# ---------------------------------------------------------------------------
# Metric axioms
# ---------------------------------------------------------------------------

def triangle_holds(x: Vec[Fraction], y: Vec[Fraction], z: Vec[Fraction]) -> bool:
    check_dims(x, y, z)
    holds = sqrt_sum_leq(metric_sq(x, y), metric_sq(x, z), metric_sq(z, y))
    if not holds:
        raise ConsistencyFault(f"triangle inequality fails for {x}, {y}, {z}")
    return holds


def triangle_tight(x: Vec[Fraction], y: Vec[Fraction], z: Vec[Fraction]) -> bool:
    """d(x,y) = d(x,z) + d(z,y) exactly, i.e. z lies on the segment from x to y."""
    check_dims(x, y, z)
    return sqrt_sum_eq(metric_sq(x, y), metric_sq(x, z), metric_sq(z, y))


@dataclass(frozen=True)
class MetricReport:
    commutative: bool
    positive_definite: bool
    triangle: bool
    triangle_tight: bool
    coincident: bool

    @property
    def all_hold(self) -> bool:
        return self.commutative and self.positive_definite and self.triangle


def metric_axioms_report(
    x: Vec[Fraction], y: Vec[Fraction], z: Vec[Fraction]
) -> MetricReport:
    check_dims(x, y, z)
    dxy = metric_sq(x, y)
    coincident = vec_equal(x, y)
    return MetricReport(
        commutative=dxy == metric_sq(y, x),
        positive_definite=dxy >= 0 and ((dxy == 0) == coincident),
        triangle=triangle_holds(x, y, z),
        triangle_tight=triangle_tight(x, y, z),
        coincident=coincident,
    )
