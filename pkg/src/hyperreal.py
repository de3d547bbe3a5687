"""
Levi-Civita style hyperreals: finitely supported formal sums Σ cₖ·εᵏ.

ε is a fixed positive infinitesimal and k ranges over the integers, so ε⁻¹
plays the role of an infinite hyperreal ω and any element supported only at
k = 0 is a standard rational. The order is the leading-term order: x > 0 iff
the coefficient at the smallest exponent is positive.

Every classification here is a single read of the valuation (the smallest
exponent carrying a nonzero coefficient):

    is_i_small(x)    x = 0 or val(x) ≥ 1
    is_i_large(x)    val(x) ≤ −1
    is_i_limited(x)  not is_i_large(x)
    standard_part(x) coefficient at ε⁰, for limited x

None of them recurses, and nothing in this module recurses on one of them.

Serialized form: [[exponent, "p/q"], ...] sorted by exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Literal, Mapping

from src.scalar import DomainError, Rat, format_rat, parse_rat, to_rat

DEFAULT_INV_TERMS = 16

Term = tuple[int, Rat]


def _normalize(terms: Iterable[Term]) -> tuple[Term, ...]:
    acc: dict[int, Rat] = {}
    for k, c in terms:
        acc[k] = acc.get(k, 0) + c
    return tuple(sorted((k, c) for k, c in acc.items() if c != 0))


def _merge(a: tuple[Term, ...], b: tuple[Term, ...]) -> tuple[Term, ...]:
    """Sum of two normalized term tuples, by a single pass over both."""
    if not a:
        return b
    if not b:
        return a
    out: list[Term] = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka, ca = a[i]
        kb, cb = b[j]
        if ka < kb:
            out.append(a[i])
            i += 1
        elif kb < ka:
            out.append(b[j])
            j += 1
        else:
            c = ca + cb
            if c:
                out.append((ka, c))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _product(a: tuple[Term, ...], b: tuple[Term, ...]) -> tuple[Term, ...]:
    if not a or not b:
        return ()
    if len(b) == 1:
        a, b = b, a
    if len(a) == 1:
        # a monomial shifts and scales; order and nonzero coefficients survive
        k, c = a[0]
        return tuple((k + kb, c * cb) for kb, cb in b)
    return _normalize((ka + kb, ca * cb) for ka, ca in a for kb, cb in b)


def _compare(a: tuple[Term, ...], b: tuple[Term, ...]) -> Literal[-1, 0, 1]:
    """Sign of a − b, read at the first exponent where the two differ."""
    i = j = 0
    na, nb = len(a), len(b)
    while i < na or j < nb:
        ka = a[i][0] if i < na else None
        kb = b[j][0] if j < nb else None
        if kb is None or (ka is not None and ka < kb):
            return 1 if a[i][1] > 0 else -1
        if ka is None or kb < ka:
            return -1 if b[j][1] > 0 else 1
        ca, cb = a[i][1], b[j][1]
        if ca != cb:
            return 1 if ca > cb else -1
        i += 1
        j += 1
    return 0


def _terms_of(x: object) -> tuple[Term, ...] | None:
    """Terms of an LC or a rational operand; None for anything else."""
    if isinstance(x, LC):
        return x.terms
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return ((0, Fraction(x)),) if x else ()
    return None


@total_ordering
@dataclass(frozen=True, slots=True)
class LC:
    """An exact element Σ cₖ·εᵏ. `terms` is sorted by exponent with no zero coefficients."""

    terms: tuple[Term, ...] = ()

    # -- construction --------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[int, Rat] | Iterable[Term]) -> LC:
        items = terms.items() if isinstance(terms, Mapping) else terms
        return cls(_normalize((int(k), to_rat(c)) for k, c in items))

    @classmethod
    def constant(cls, q: Rat | int) -> LC:
        q = to_rat(q)
        return cls(((0, q),)) if q != 0 else cls()

    @classmethod
    def epsilon(cls, k: int = 1) -> LC:
        """εᵏ. Negative k gives the infinite elements, ε⁻¹ being ω."""
        return cls(((k, Fraction(1)),))

    @classmethod
    def coerce(cls, x: LC | Rat | int) -> LC:
        if isinstance(x, LC):
            return x
        return cls.constant(x)

    # -- field operations ----------------------------------------------------

    def __add__(self, other: LC | Rat | int) -> LC:
        rhs = _terms_of(other)
        if rhs is None:
            return NotImplemented
        return LC(_merge(self.terms, rhs))

    __radd__ = __add__

    def __neg__(self) -> LC:
        return LC(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: LC | Rat | int) -> LC:
        rhs = _terms_of(other)
        if rhs is None:
            return NotImplemented
        return LC(_merge(self.terms, tuple((k, -c) for k, c in rhs)))

    def __rsub__(self, other: LC | Rat | int) -> LC:
        lhs = _terms_of(other)
        if lhs is None:
            return NotImplemented
        return LC(_merge(lhs, (-self).terms))

    def __mul__(self, other: LC | Rat | int) -> LC:
        rhs = _terms_of(other)
        if rhs is None:
            return NotImplemented
        return LC(_product(self.terms, rhs))

    __rmul__ = __mul__

    def scale(self, q: Rat) -> LC:
        q = to_rat(q)
        if q == 0:
            return LC()
        return LC(tuple((k, c * q) for k, c in self.terms))

    def __pow__(self, n: int) -> LC:
        if n < 0:
            raise DomainError("negative powers need lc_inv with an explicit truncation order")
        out = LC.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __abs__(self) -> LC:
        return -self if sign(self) < 0 else self

    # -- order ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        rhs = _terms_of(other)
        if rhs is None:
            return NotImplemented
        return self.terms == rhs

    def __hash__(self) -> int:
        if not self.terms:
            return hash(0)
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return hash(self.terms[0][1])
        return hash(self.terms)

    def __lt__(self, other: LC | Rat | int) -> bool:
        rhs = _terms_of(other)
        if rhs is None:
            return NotImplemented
        return _compare(self.terms, rhs) < 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- text ----------------------------------------------------------------

    def to_pairs(self) -> list[list[int | str]]:
        return [[k, format_rat(c)] for k, c in self.terms]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[object]]) -> LC:
        """Inverse of to_pairs. Exponents must be integers; bools and floats are rejected."""
        out = []
        for pair in pairs:
            k, c = pair
            if not isinstance(k, int) or isinstance(k, bool):
                raise DomainError(f"exponent must be an integer, got {k!r}")
            out.append((k, parse_rat(str(c))))
        return cls(_normalize(out))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            coeff = format_rat(c)
            if k == 0:
                parts.append(coeff)
            elif k == 1:
                parts.append(f"{coeff}*eps")
            else:
                parts.append(f"{coeff}*eps^{k}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Valuation reads
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Valuation:
    """val is the leading exponent, +inf for zero; leading_coeff is None for zero."""

    val: int | float
    leading_coeff: Rat | None


def valuation(x: LC) -> Valuation:
    if not x.terms:
        return Valuation(math.inf, None)
    k, c = x.terms[0]
    return Valuation(k, c)


def sign(x: LC) -> Literal[-1, 0, 1]:
    if not x.terms:
        return 0
    return 1 if x.terms[0][1] > 0 else -1


def is_i_small(x: LC) -> bool:
    return valuation(x).val >= 1


def is_i_large(x: LC) -> bool:
    return valuation(x).val <= -1


def is_i_limited(x: LC) -> bool:
    return not is_i_large(x)


def is_standard(x: LC) -> bool:
    return all(k == 0 for k, _ in x.terms)


def standard_part(x: LC) -> Rat:
    if is_i_large(x):
        raise DomainError(f"standard part of an i-large element: {x}")
    for k, c in x.terms:
        if k == 0:
            return c
    return Fraction(0)


# ---------------------------------------------------------------------------
# Truncated inversion
# ---------------------------------------------------------------------------

def lc_inv(x: LC, terms: int = DEFAULT_INV_TERMS) -> LC:
    """
    Inverse of x to `terms` correction terms.

    Writes x = c·εᵛ·(1 + r) with every exponent of r ≥ 1 and returns
    y = c⁻¹·ε⁻ᵛ·Σⱼ(−r)ʲ with the series cut at relative exponent `terms`.
    Then x·y = 1 + residual where every exponent of the residual exceeds
    `terms`. Single-term inputs invert exactly.
    """
    if not x.terms:
        raise DomainError("lc_inv of zero")
    if terms < 1:
        raise DomainError(f"truncation order must be a positive integer, got {terms}")
    v, c = x.terms[0]
    r = LC(tuple((k - v, q / c) for k, q in x.terms[1:]))

    def cut(s: LC) -> LC:
        return LC(tuple((k, q) for k, q in s.terms if k <= terms))

    acc = LC.constant(1)
    power = LC.constant(1)
    for _ in range(terms):
        power = cut(power * -r)
        if not power:
            break
        acc = acc + power
    return LC(tuple((k - v, q / c) for k, q in acc.terms))


def inv_residual(x: LC, y: LC) -> LC:
    """x·y − 1, the quantity whose valuation the lc_inv contract bounds."""
    return x * y - 1
