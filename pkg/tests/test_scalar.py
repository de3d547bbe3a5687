from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.scalar import (
    DomainError,
    approx_sqrt,
    format_rat,
    leq_sqrt,
    mp_sqrt,
    parse_rat,
    rat_cmp,
    rat_div,
    sqrt_leq,
    sqrt_sum_eq,
    sqrt_sum_leq,
    to_rat,
)
from tests.strategies import nonneg_rats, nonzero_rats, rats

F = Fraction


def test_add_example():
    assert F(1, 2) + F(1, 3) == F(5, 6)


def test_div_by_zero_is_domain_error():
    with pytest.raises(DomainError):
        rat_div(F(1), F(0))


@given(rats, nonzero_rats)
def test_div_inverts_mul(a, b):
    assert rat_div(a, b) * b == a


@given(rats, rats)
def test_cmp_is_three_way(a, b):
    assert rat_cmp(a, b) == -rat_cmp(b, a)
    assert (rat_cmp(a, b) == 0) == (a == b)


@pytest.mark.parametrize("text, expected", [
    ("3/4", F(3, 4)),
    ("-6/8", F(-3, 4)),
    (" 7 ", F(7)),
    ("+2/1", F(2)),
])
def test_parse_rat(text, expected):
    assert parse_rat(text) == expected


@pytest.mark.parametrize("text", ["1/0", "1.5", "a/b", "", "1//2"])
def test_parse_rat_rejects(text):
    with pytest.raises(DomainError):
        parse_rat(text)


def test_format_rat_canonical():
    assert format_rat(F(4, 2)) == "2"
    assert format_rat(F(-2, 6)) == "-1/3"


@given(rats)
def test_format_parse_agree(q):
    assert parse_rat(format_rat(q)) == q


def test_to_rat_rationalizes_floats_exactly():
    assert to_rat(0.5) == F(1, 2)
    assert to_rat(0.1) == F(3602879701896397, 36028797018963968)


@pytest.mark.parametrize("bad", [True, float("nan"), float("inf"), None, [1]])
def test_to_rat_rejects(bad):
    with pytest.raises(DomainError):
        to_rat(bad)


# -- surds ----------------------------------------------------------------------

@pytest.mark.parametrize("a, b, expected", [
    (F(4), F(2), True),
    (F(2), F(3, 2), True),
    (F(2), F(-1), False),
    (F(2), F(7, 5), False),
    (F(0), F(0), True),
])
def test_sqrt_leq_examples(a, b, expected):
    assert sqrt_leq(a, b) is expected


def test_sqrt_leq_rejects_negative_argument():
    with pytest.raises(DomainError):
        sqrt_leq(F(-1), F(1))


@pytest.mark.parametrize("b, a, expected", [
    (F(2), F(4), True),
    (F(-3), F(0), True),
    (F(3, 2), F(2), False),
    (F(7, 5), F(2), True),
])
def test_leq_sqrt_examples(b, a, expected):
    assert leq_sqrt(b, a) is expected


@pytest.mark.parametrize("c, a, b, expected", [
    (F(4), F(1), F(1), True),
    (F(5), F(1), F(1), False),
    (F(2), F(1), F(1), True),
    (F(0), F(0), F(0), True),
])
def test_sqrt_sum_leq_examples(c, a, b, expected):
    assert sqrt_sum_leq(c, a, b) is expected


@given(nonneg_rats, nonneg_rats)
def test_sqrt_of_sum_below_sum_of_sqrts(a, b):
    assert sqrt_sum_leq(a + b, a, b)


@given(nonneg_rats, nonneg_rats)
def test_sqrt_sum_eq_on_perfect_squares(p, q):
    assert sqrt_sum_eq((p + q) ** 2, p * p, q * q)
    assert sqrt_sum_leq((p + q) ** 2, p * p, q * q)


def test_sqrt_sum_eq_boundary():
    assert sqrt_sum_eq(F(4), F(1), F(1))
    assert not sqrt_sum_eq(F(2), F(1), F(1))


@given(nonneg_rats, rats)
def test_sqrt_leq_matches_high_precision_sqrt(a, b):
    if b >= 0 and a != b * b:
        with mpmath.workprec(256):
            assert sqrt_leq(a, b) == (mp_sqrt(a) <= mpmath.mpf(b.numerator) / b.denominator)


# -- approximations ---------------------------------------------------------------

def test_approx_sqrt_zero():
    assert approx_sqrt(F(0), 10) == 0


@pytest.mark.parametrize("p", [1, 8, 64])
def test_approx_sqrt_perfect_square(p):
    assert abs(approx_sqrt(F(4), p) - 2) < F(1, 2**p)


def test_approx_sqrt_two_within_bound():
    r = approx_sqrt(F(2), 20)
    ulp = F(1, 2**20)
    assert r * r <= 2 < (r + ulp) ** 2


@given(nonneg_rats, st.integers(min_value=1, max_value=80))
def test_approx_sqrt_brackets(a, p):
    r = approx_sqrt(a, p)
    assert r >= 0
    assert r * r <= a < (r + F(1, 2**p)) ** 2


def test_approx_sqrt_rejects_bad_precision():
    with pytest.raises(DomainError):
        approx_sqrt(F(2), 0)
    with pytest.raises(DomainError):
        approx_sqrt(F(-2), 8)
