"""
Scalar laws: the rational field, the hyperreal ordered field with its
infinitesimal classifications, and the surd procedures against a
fixed-precision square root.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable

import numpy as np

from src.generate import (
    DEFAULT_LC_INV_TERMS,
    RunConfig,
    random_limited_lc,
    random_lc,
    random_nonzero_lc,
    random_nonzero_rat,
    random_rat,
    random_small_lc,
)
from src.hyperreal import (
    LC,
    inv_residual,
    is_i_limited,
    is_i_small,
    lc_inv,
    sign,
    standard_part,
    valuation,
)
from src.scalar import (
    approx_sqrt,
    leq_sqrt,
    rat_cmp,
    rat_div,
    sqrt_leq,
    sqrt_sum_eq,
    sqrt_sum_leq,
)
from src.suites.laws import Law

LC_INV_ORDERS = (1, 4, DEFAULT_LC_INV_TERMS)
ORACLE_BITS = 64

Scalar = Callable[[np.random.Generator, int], Any]


def scalars(gen: Scalar, count: int):
    def draw(rng: np.random.Generator, config: RunConfig) -> tuple[Any, ...]:
        return tuple(gen(rng, config.magnitude) for _ in range(count))

    return draw


def _trichotomy(a: Any, b: Any) -> bool:
    return (a < b) + (a == b) + (a > b) == 1


def _order_translation(a: Any, b: Any, c: Any) -> bool | None:
    if not a < b:
        return None
    return a + c < b + c


def _order_product(a: Any, b: Any) -> bool | None:
    if not (a > 0 and b > 0):
        return None
    return a * b > 0


def ordered_field_laws(gen: Scalar) -> list[Law]:
    """Ring and order laws shared by both fields. Inverses are checked per field."""
    return [
        Law("add_associative", scalars(gen, 3), lambda a, b, c: (a + b) + c == a + (b + c)),
        Law("add_commutative", scalars(gen, 2), lambda a, b: a + b == b + a),
        Law("add_identity", scalars(gen, 1), lambda a: a + 0 == a),
        Law("add_inverse", scalars(gen, 1), lambda a: a + (-a) == 0),
        Law("mul_associative", scalars(gen, 3), lambda a, b, c: (a * b) * c == a * (b * c)),
        Law("mul_commutative", scalars(gen, 2), lambda a, b: a * b == b * a),
        Law("mul_identity", scalars(gen, 1), lambda a: a * 1 == a),
        Law("distributive", scalars(gen, 3), lambda a, b, c: a * (b + c) == a * b + a * c),
        Law("order_trichotomy", scalars(gen, 2), _trichotomy),
        Law("order_translation", scalars(gen, 3), _order_translation),
        Law("order_product", scalars(gen, 2), _order_product),
        Law("square_nonnegative", scalars(gen, 1), lambda a: a * a >= 0),
    ]


def rat_laws() -> list[Law]:
    return ordered_field_laws(random_rat) + [
        Law("mul_inverse", scalars(random_nonzero_rat, 1),
            lambda a: a * rat_div(Fraction(1), a) == 1),
        Law("cmp_matches_order", scalars(random_rat, 2),
            lambda a, b: rat_cmp(a, b) == (a > b) - (a < b)),
    ]


# ---------------------------------------------------------------------------
# Hyperreal laws
# ---------------------------------------------------------------------------

def _draw_pair(first: Scalar, second: Scalar):
    def draw(rng: np.random.Generator, config: RunConfig) -> tuple[Any, Any]:
        return first(rng, config.magnitude), second(rng, config.magnitude)

    return draw


def _nonneg_lc(rng: np.random.Generator, magnitude: int) -> LC:
    return abs(random_lc(rng, magnitude))


def _positive_rat(rng: np.random.Generator, magnitude: int) -> Fraction:
    return abs(random_nonzero_rat(rng, magnitude))


def _inv_residual_law(order: int) -> Law:
    def holds(x: LC) -> bool:
        r = inv_residual(x, lc_inv(x, order))
        return valuation(r).val > order

    return Law(f"lc_inv_residual_K{order}", scalars(random_nonzero_lc, 1), holds)


def hyperreal_laws() -> list[Law]:
    small, limited = random_small_lc, random_limited_lc
    return ordered_field_laws(random_lc) + [
        Law("sign_matches_order", scalars(random_lc, 1),
            lambda x: sign(x) == (x > 0) - (x < 0)),
        Law("epsilon_below_positive_rationals", scalars(_positive_rat, 1),
            lambda q: 0 < LC.epsilon(1) < q),
        Law("small_plus_small_is_small", _draw_pair(small, small),
            lambda s, t: is_i_small(s + t)),
        Law("small_times_small_is_small", _draw_pair(small, small),
            lambda s, t: is_i_small(s * t)),
        Law("small_times_limited_is_small", _draw_pair(small, limited),
            lambda s, x: is_i_small(s * x)),
        Law("limited_plus_limited_is_limited", _draw_pair(limited, limited),
            lambda x, y: is_i_limited(x + y)),
        Law("limited_times_limited_is_limited", _draw_pair(limited, limited),
            lambda x, y: is_i_limited(x * y)),
        Law("standard_part_additive", _draw_pair(limited, limited),
            lambda x, y: standard_part(x + y) == standard_part(x) + standard_part(y)),
        Law("standard_part_multiplicative", _draw_pair(limited, limited),
            lambda x, y: standard_part(x * y) == standard_part(x) * standard_part(y)),
        Law("standard_part_of_small_is_zero", scalars(small, 1),
            lambda s: standard_part(s) == 0),
        Law("small_iff_square_small", scalars(_nonneg_lc, 1),
            lambda x: is_i_small(x) == is_i_small(x * x)),
    ] + [_inv_residual_law(k) for k in LC_INV_ORDERS]


# ---------------------------------------------------------------------------
# Surd procedures against approx_sqrt
# ---------------------------------------------------------------------------

_ULP = Fraction(1, 1 << ORACLE_BITS)


def _nonneg_rat(rng: np.random.Generator, magnitude: int) -> Fraction:
    return abs(random_rat(rng, magnitude))


def _sqrt_leq_vs_oracle(a: Fraction, b: Fraction) -> bool | None:
    """r ≤ √a < r + ulp, so b ≥ r + ulp decides true and b < r decides false."""
    exact = sqrt_leq(a, b)
    if b < 0:
        return not exact
    r = approx_sqrt(a, ORACLE_BITS)
    if b >= r + _ULP:
        return exact
    if b < r:
        return not exact
    return None


def _leq_sqrt_vs_oracle(b: Fraction, a: Fraction) -> bool | None:
    exact = leq_sqrt(b, a)
    r = approx_sqrt(a, ORACLE_BITS)
    if b <= r:
        return exact
    if b >= r + _ULP:
        return not exact
    return None


def _sqrt_sum_leq_vs_oracle(c: Fraction, a: Fraction, b: Fraction) -> bool | None:
    exact = sqrt_sum_leq(c, a, b)
    rc, ra, rb = (approx_sqrt(q, ORACLE_BITS) for q in (c, a, b))
    if rc + _ULP <= ra + rb:
        return exact
    if rc > ra + rb + 2 * _ULP:
        return not exact
    return None


def _approx_sqrt_brackets(a: Fraction) -> bool:
    r = approx_sqrt(a, ORACLE_BITS)
    return r * r <= a < (r + _ULP) ** 2


def surd_laws() -> list[Law]:
    return [
        Law("sqrt_leq_matches_oracle", _draw_pair(_nonneg_rat, random_rat), _sqrt_leq_vs_oracle),
        Law("leq_sqrt_matches_oracle", _draw_pair(random_rat, _nonneg_rat), _leq_sqrt_vs_oracle),
        Law("sqrt_sum_leq_matches_oracle", scalars(_nonneg_rat, 3), _sqrt_sum_leq_vs_oracle),
        Law("sqrt_sum_eq_on_perfect_squares", scalars(_nonneg_rat, 2),
            lambda p, q: sqrt_sum_eq((p + q) ** 2, p * p, q * q)),
        Law("sqrt_leq_on_perfect_squares", scalars(_nonneg_rat, 1),
            lambda p: sqrt_leq(p * p, p) and leq_sqrt(p, p * p)),
        Law("approx_sqrt_brackets", scalars(_nonneg_rat, 1), _approx_sqrt_brackets),
    ]
