"""
ℝⁿ as a vector space and inner product space, generic over the scalar field.

A Vec carries its entries and the Field they live in, so that a dim-0 vector
still knows whether its dot product is the rational 0 or the hyperreal 0.
Two fields are provided: RAT (fractions.Fraction) and LC_FIELD
(src.hyperreal.LC). Both support + − * unary −, abs and the order, which is
all any operation here uses.

Subtraction exists twice on purpose. vec_sub is vec_add(u, scalar_mul(−1, v));
vec_sub_direct is componentwise. The check suites prove them extensionally
equal and everything downstream uses vec_sub.

Malformed input is rejected with DimensionError rather than mapped to 0 or
the empty vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Generic, Iterable, Iterator, TypeVar

from src.hyperreal import LC
from src.scalar import Rat, approx_sqrt, format_rat, to_rat

S = TypeVar("S", Fraction, LC)


class DimensionError(ValueError):
    """Vectors of different lengths were combined."""


@dataclass(frozen=True)
class Field(Generic[S]):
    name: str
    zero: S
    one: S
    lift: Callable[[Rat], S]


RAT: Field[Fraction] = Field("rat", Fraction(0), Fraction(1), to_rat)
LC_FIELD: Field[LC] = Field("lc", LC(), LC.constant(1), LC.constant)


@dataclass(frozen=True)
class Vec(Generic[S]):
    entries: tuple[S, ...]
    field: Field[S] = RAT  # type: ignore[assignment]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[S]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> S:
        return self.entries[i]

    def __str__(self) -> str:
        return "[" + ", ".join(_scalar_str(x) for x in self.entries) + "]"


def _scalar_str(x: Rat | LC) -> str:
    return format_rat(x) if isinstance(x, Fraction) else str(x)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def vec(values: Iterable[Rat | int | float | str]) -> Vec[Fraction]:
    """A rational vector from anything to_rat accepts."""
    return Vec(tuple(to_rat(x) for x in values), RAT)


def lc_vec(values: Iterable[LC | Rat | int]) -> Vec[LC]:
    return Vec(tuple(LC.coerce(x) for x in values), LC_FIELD)


def zero(n: int, field: Field[S] = RAT) -> Vec[S]:  # type: ignore[assignment]
    return Vec((field.zero,) * n, field)


def lift(v: Vec[Fraction]) -> Vec[LC]:
    """Map a rational vector to the standard (exponent-0) hyperreal vector."""
    return Vec(tuple(LC.constant(x) for x in v.entries), LC_FIELD)


def check_dims(*vs: Vec) -> None:
    dims = {v.dim for v in vs}
    if len(dims) > 1:
        raise DimensionError(
            "dimension mismatch: " + " vs ".join(str(v.dim) for v in vs)
        )


# ---------------------------------------------------------------------------
# Vector space operations
# ---------------------------------------------------------------------------

def vec_add(u: Vec[S], v: Vec[S]) -> Vec[S]:
    check_dims(u, v)
    return Vec(tuple(a + b for a, b in zip(u.entries, v.entries)), u.field)


def scalar_mul(a: S | int, v: Vec[S]) -> Vec[S]:
    return Vec(tuple(a * x for x in v.entries), v.field)


def vec_sub(u: Vec[S], v: Vec[S]) -> Vec[S]:
    return vec_add(u, scalar_mul(-1, v))


def vec_sub_direct(u: Vec[S], v: Vec[S]) -> Vec[S]:
    check_dims(u, v)
    return Vec(tuple(a - b for a, b in zip(u.entries, v.entries)), u.field)


def zvecp(v: Vec) -> bool:
    return all(x == 0 for x in v.entries)


# ---------------------------------------------------------------------------
# Inner product and the squared norm / metric
# ---------------------------------------------------------------------------

def dot(u: Vec[S], v: Vec[S]) -> S:
    check_dims(u, v)
    total = u.field.zero
    for a, b in zip(u.entries, v.entries):
        total = total + a * b
    return total


def norm_sq(v: Vec[S]) -> S:
    return dot(v, v)


def metric_sq(x: Vec[S], y: Vec[S]) -> S:
    return norm_sq(vec_sub(x, y))


def max_abs(v: Vec[S]) -> S:
    best = v.field.zero
    for x in v.entries:
        ax = abs(x)
        if ax > best:
            best = ax
    return best


def eu_norm_display(v: Vec[Fraction], p: int = 32) -> Rat:
    """‖v‖ to within 2⁻ᵖ, for reports. Never used to decide anything."""
    return approx_sqrt(norm_sq(v), p)


def vec_equal(u: Vec, v: Vec) -> bool:
    return u.dim == v.dim and all(a == b for a, b in zip(u.entries, v.entries))


def to_strings(v: Vec[Fraction]) -> list[str]:
    return [format_rat(x) for x in v.entries]
