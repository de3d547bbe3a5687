"""
Exact scalar kernel: rationals plus the two surd comparisons the metric
axioms need.

Every real number in this project is a `fractions.Fraction`. Square roots
are never materialized. A comparison involving a root is rewritten into a
rational comparison by squaring both sides, which is an equivalence whenever
both sides are known to be nonnegative:

    sqrt_leq(a, b)        √a ≤ b
    leq_sqrt(b, a)        b ≤ √a
    sqrt_sum_leq(c, a, b) √c ≤ √a + √b
    sqrt_sum_eq(c, a, b)  √c = √a + √b

approx_sqrt and mp_sqrt exist for display and for oracles in the check
suites. Neither is ever consulted by a decision.

Text form of a rational is "p/q", with "/q" omitted when q = 1 and the sign
carried on the numerator only.

Usage:
    from src.scalar import parse_rat, sqrt_sum_leq

    sqrt_sum_leq(parse_rat("5"), parse_rat("1"), parse_rat("1"))   # False
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Literal

import mpmath

Rat = Fraction

RE_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class DomainError(ValueError):
    """An argument lies outside the domain of an exact operation."""


# ---------------------------------------------------------------------------
# Construction and text form
# ---------------------------------------------------------------------------

def to_rat(x: int | float | str | Fraction) -> Rat:
    """
    Coerce x to an exact rational.

    Floats are rationalized exactly (the binary value, not the decimal text),
    so 0.1 becomes 3602879701896397/36028797018963968.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite float has no rational value: {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise DomainError(f"cannot interpret {x!r} as a rational")


def parse_rat(text: str) -> Rat:
    """Parse "p/q" (or a bare integer "p"). A zero denominator is a domain error."""
    m = RE_RAT.match(text)
    if not m:
        raise DomainError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(q: Rat) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Field operations
#
# add/sub/mul/neg/abs are Fraction's own operators. Only division and the
# three-way comparison need wrapping: division to turn ZeroDivisionError into
# a DomainError, cmp because Python has no spaceship operator.
# ---------------------------------------------------------------------------

def rat_div(a: Rat, b: Rat) -> Rat:
    if b == 0:
        raise DomainError(f"division by zero: {format_rat(a)}/0")
    return a / b


def rat_cmp(a: Rat, b: Rat) -> Literal[-1, 0, 1]:
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


# ---------------------------------------------------------------------------
# Surd decision procedures
# ---------------------------------------------------------------------------

def _require_nonneg(**args: Rat) -> None:
    for name, value in args.items():
        if value < 0:
            raise DomainError(f"square root of negative {name} = {format_rat(value)}")


def sqrt_leq(a: Rat, b: Rat) -> bool:
    """Decide √a ≤ b without computing √a."""
    _require_nonneg(a=a)
    return b >= 0 and a <= b * b


def leq_sqrt(b: Rat, a: Rat) -> bool:
    """Decide b ≤ √a without computing √a."""
    _require_nonneg(a=a)
    return b <= 0 or b * b <= a


def sqrt_sum_leq(c: Rat, a: Rat, b: Rat) -> bool:
    """
    Decide √c ≤ √a + √b exactly.

    Squaring gives c ≤ a + b + 2√(ab), i.e. t ≤ 2√(ab) with t = c − a − b.
    If t ≤ 0 the inequality holds outright; otherwise both sides are
    nonnegative and squaring again gives t² ≤ 4ab.
    """
    _require_nonneg(c=c, a=a, b=b)
    t = c - a - b
    if t <= 0:
        return True
    return t * t <= 4 * a * b


def sqrt_sum_eq(c: Rat, a: Rat, b: Rat) -> bool:
    """Decide √c = √a + √b exactly (t = c − a − b must be ≥ 0 and t² = 4ab)."""
    _require_nonneg(c=c, a=a, b=b)
    t = c - a - b
    return t >= 0 and t * t == 4 * a * b


# ---------------------------------------------------------------------------
# Approximations (display and oracles only)
# ---------------------------------------------------------------------------

def approx_sqrt(a: Rat, p: int) -> Rat:
    """
    Return r ≥ 0 with |r − √a| < 2⁻ᵖ.

    r = ⌊√(a·4ᵖ)⌋ / 2ᵖ. The floor square root of the integer part of a·4ᵖ
    equals the floor square root of a·4ᵖ itself, so math.isqrt gives the
    exact truncation on the 2⁻ᵖ grid.
    """
    _require_nonneg(a=a)
    if p < 1:
        raise DomainError(f"precision must be a positive integer, got {p}")
    scaled = a * (1 << (2 * p))
    return Fraction(math.isqrt(scaled.numerator // scaled.denominator), 1 << p)


def mp_value(q: Rat, bits: int = 256) -> mpmath.mpf:
    """q as an mpmath float carrying `bits` bits of mantissa."""
    with mpmath.workprec(bits):
        return mpmath.mpf(q.numerator) / q.denominator


def mp_sqrt(q: Rat, bits: int = 256) -> mpmath.mpf:
    _require_nonneg(q=q)
    with mpmath.workprec(bits):
        return mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator)
