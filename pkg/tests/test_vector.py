from fractions import Fraction

import pytest
from hypothesis import given

from src.hyperreal import LC
from src.vector import (
    LC_FIELD,
    RAT,
    DimensionError,
    dot,
    eu_norm_display,
    lc_vec,
    lift,
    max_abs,
    metric_sq,
    norm_sq,
    scalar_mul,
    vec,
    vec_add,
    vec_equal,
    vec_sub,
    vec_sub_direct,
    zero,
    zvecp,
)
from tests.strategies import lc_pairs, pairs, rats, triples

F = Fraction
EPS = LC.epsilon(1)


def test_vec_add_example():
    assert vec_equal(vec_add(vec([1, 2]), vec([3, 4])), vec([4, 6]))


def test_vec_add_dimension_mismatch():
    with pytest.raises(DimensionError):
        vec_add(vec([1]), vec([1, 2]))


def test_scalar_mul_examples():
    v = vec(["1/2", 3])
    assert vec_equal(scalar_mul(2, v), vec([1, 6]))
    assert vec_equal(scalar_mul(1, v), v)
    assert zvecp(scalar_mul(0, v))


def test_vec_sub_examples():
    assert vec_equal(vec_sub(vec([3, 1]), vec([1, 2])), vec([2, -1]))
    v = vec([5, "-2/3"])
    assert zvecp(vec_sub(v, v))


@pytest.mark.parametrize("entries, expected", [
    ([0, 0, 0], True),
    ([0, 1], False),
    ([], True),
])
def test_zvecp(entries, expected):
    assert zvecp(vec(entries)) is expected


def test_dot_examples():
    assert dot(vec([1, 2]), vec([3, 4])) == 11
    assert dot(vec([1, 2]), zero(2)) == 0
    assert dot(vec([]), vec([])) == 0


def test_empty_vectors_keep_their_field():
    assert isinstance(dot(zero(0, RAT), zero(0, RAT)), Fraction)
    assert isinstance(dot(zero(0, LC_FIELD), zero(0, LC_FIELD)), LC)


def test_norm_metric_max_abs_examples():
    assert norm_sq(vec([3, 4])) == 25
    x = vec([1, "1/3"])
    assert metric_sq(x, x) == 0
    assert max_abs(vec([1, -5, 2])) == 5
    assert max_abs(vec([])) == 0


def test_eu_norm_display_is_close():
    assert abs(eu_norm_display(vec([3, 4])) - 5) < F(1, 2**32)


def test_lift_is_standard():
    v = lift(vec([1, "2/3"]))
    assert v.field is LC_FIELD
    assert all(c.terms in (((0, F(1)),), ((0, F(2, 3)),)) for c in v.entries)


def test_hyperreal_dot():
    x = lc_vec([EPS, 2 * EPS])
    assert dot(x, x) == 5 * LC.epsilon(2)


@given(pairs)
def test_sub_matches_direct(uv):
    u, v = uv
    assert vec_equal(vec_sub(u, v), vec_sub_direct(u, v))


@given(pairs)
def test_sub_anticommutative(uv):
    u, v = uv
    assert vec_equal(vec_sub(u, v), scalar_mul(-1, vec_sub(v, u)))


@given(lc_pairs)
def test_sub_matches_direct_over_hyperreals(uv):
    u, v = uv
    assert vec_equal(vec_sub(u, v), vec_sub_direct(u, v))


@given(triples, rats)
def test_dot_bilinear(uvw, a):
    u, v, w = uvw
    assert dot(vec_add(scalar_mul(a, u), v), w) == a * dot(u, w) + dot(v, w)
    assert dot(w, vec_add(scalar_mul(a, u), v)) == a * dot(w, u) + dot(w, v)
    assert dot(u, v) == dot(v, u)


@given(pairs)
def test_positive_definite(uv):
    u, _ = uv
    assert norm_sq(u) >= 0
    assert (norm_sq(u) == 0) == zvecp(u)


@given(lc_pairs)
def test_positive_definite_over_hyperreals(uv):
    u, _ = uv
    assert norm_sq(u) >= 0
    assert (norm_sq(u) == 0) == zvecp(u)


@given(pairs)
def test_max_abs_below_norm(uv):
    z, _ = uv
    m = max_abs(z)
    assert m * m <= norm_sq(z)
    assert all(abs(c) <= m for c in z.entries)
