from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.cauchy_schwarz import ConsistencyFault
from src.continuity import (
    Add,
    ArityError,
    Const,
    ExprSyntaxError,
    Mul,
    Neg,
    Sgn,
    Sub,
    Var,
    builtin,
    builtin_prod2,
    builtin_sum,
    entries_small_check,
    eval_expr,
    format_expr,
    norm_bridge,
    parse_expr,
    probe,
    probe_battery,
)
from src.hyperreal import LC
from src.vector import lc_vec, lift, vec
from tests.strategies import directions, lc_pairs

F = Fraction
EPS = LC.epsilon(1)


# -- parsing ------------------------------------------------------------------

def test_parse_sum3():
    assert parse_expr("x1 + x2 + x3", 3).root == Add(Add(Var(0), Var(1)), Var(2))


def test_parse_product():
    assert parse_expr("x1 * x2", 2).root == Mul(Var(0), Var(1))


def test_parse_precedence_and_unary_minus():
    e = parse_expr("-x1 * 3/4 - (x2 - sgn(x1))", 2)
    assert e.root == Sub(Mul(Neg(Var(0)), Const(F(3, 4))), Sub(Var(1), Sgn(Var(0))))
    assert e.has_sgn


def test_parse_arity_violation():
    with pytest.raises(ArityError):
        parse_expr("x1 + x9", 3)


@pytest.mark.parametrize("text, position", [
    ("x1 +", 4),
    ("x1 $ x2", 3),
    ("(x1 + x2", 8),
    ("x1 x2", 3),
    ("1/0 + x1", 0),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text, 2)
    assert info.value.position == position


@pytest.mark.parametrize("text", [
    "x1 + x2 + x3",
    "x1 - (x2 - x3)",
    "-(x1 + x2) * x3",
    "sgn(x1 * x2) - 7/2",
    "--x1",
])
def test_format_round_trips(text):
    e = parse_expr(text, 3)
    assert parse_expr(format_expr(e), 3) == e


# -- builtins -----------------------------------------------------------------

def test_builtins():
    assert format_expr(builtin("sum(3)")) == "x1 + x2 + x3"
    assert format_expr(builtin("prod2")) == "x1 * x2"
    assert format_expr(builtin("dot_fixed([2, -1])")) == "2 * x1 + (-1) * x2"
    assert builtin("sum(0)").arity == 0


def test_unknown_builtin():
    with pytest.raises(ExprSyntaxError):
        builtin("max(2)")


# -- evaluation ---------------------------------------------------------------

def test_eval_examples():
    sum3 = builtin_sum(3)
    assert eval_expr(sum3, lift(vec([1, 2, 3]))) == 6
    assert eval_expr(sum3, lc_vec([1 + EPS, 2, 3 - EPS])) == 6
    assert eval_expr(parse_expr("sgn(x1)", 1), lc_vec([EPS])) == 1
    assert eval_expr(parse_expr("sgn(x1)", 1), lc_vec([-EPS + 5])) == 1


def test_eval_dimension_mismatch():
    with pytest.raises(ArityError):
        eval_expr(builtin_sum(3), lc_vec([1, 2]))


# -- probes -------------------------------------------------------------------

def test_probe_sum3():
    r = probe(builtin_sum(3), vec([1, 2, 3]), vec([1, 1, 1]), 1)
    assert r.diff == -3 * EPS
    assert r.diff_small
    assert r.metric_sq_small
    assert not r.violation


def test_probe_sgn_at_origin_is_a_violation():
    r = probe(parse_expr("sgn(x1)", 1), vec([0]), vec([1]), 1)
    assert r.diff == -1
    assert r.violation


def test_probe_prod2_expansion():
    a, b, h1, h2 = F(3), F(-1, 2), F(2), F(5)
    r = probe(builtin_prod2(), vec([a, b]), vec([h1, h2]), 1)
    assert r.diff == -(a * h2 + b * h1) * EPS - h1 * h2 * LC.epsilon(2)
    assert r.diff_small


def test_probe_rejects_bad_input():
    with pytest.raises(ArityError):
        probe(builtin_sum(3), vec([1, 2]), vec([1, 1]), 1)
    with pytest.raises(ValueError):
        probe(builtin_sum(2), vec([1, 2]), vec([0, 0]), 1)
    with pytest.raises(ValueError):
        probe(builtin_sum(2), vec([1, 2]), vec([1, 0]), 0)
    with pytest.raises(ArityError):
        probe(builtin_sum(1), lc_vec([EPS]), vec([1]), 1)


@given(directions, st.integers(min_value=1, max_value=3))
def test_polynomials_never_report_a_violation(xh, k):
    x, h = xh
    e = parse_expr(" * ".join(f"x{i + 1}" for i in range(x.dim)) + " - 3 * x1", x.dim)
    assert probe(e, x, h, k).diff_small
    assert probe(builtin_sum(x.dim), x, h, k).diff_small


def test_probe_battery_order():
    e = builtin_sum(1)
    results = probe_battery(e, [vec([0]), vec([1])], [vec([1])], [2, 1])
    assert [(r.x[0], r.k) for r in results] == [(0, 1), (0, 2), (1, 1), (1, 2)]


# -- entry contracts ----------------------------------------------------------

def test_entries_small_examples():
    c = entries_small_check(lc_vec([EPS, 2 * EPS]), lc_vec([0, 0]))
    assert c.metric_small and all(c.entry_small)
    c = entries_small_check(lc_vec([1]), lc_vec([0]))
    assert not c.metric_small and c.entry_small == (False,)
    x = lc_vec([EPS + 3, LC.epsilon(-1)])
    c = entries_small_check(x, x)
    assert c.metric_small and all(c.entry_small)


@given(lc_pairs)
def test_entries_small_contract_holds(xy):
    c = entries_small_check(*xy)
    assert not c.metric_small or all(c.entry_small)


@given(lc_pairs)
def test_norm_bridge_chain(xy):
    x, _ = xy
    b = norm_bridge(x)
    if b.norm_sq_small:
        assert b.max_abs_sq_small
    if b.max_abs_sq_small:
        assert all(b.entries_sq_small)


def test_consistency_fault_is_an_assertion():
    assert issubclass(ConsistencyFault, AssertionError)
