from fractions import Fraction

import pytest

from src.cauchy_schwarz import triangle_tight
from src.generate import (
    RunConfig,
    collinear_triple,
    dependent_pair,
    make_rng,
    random_dim,
    random_limited_lc,
    random_nonzero_vec,
    random_rat,
    random_small_lc,
    random_vec,
    stream_rng,
)
from src.hyperreal import is_i_limited, is_i_small
from src.ingest import InputError
from src.vector import scalar_mul, vec_equal, zvecp


def test_same_seed_same_inputs():
    a, b = make_rng(7), make_rng(7)
    assert [random_vec(a, 4, 50) for _ in range(5)] == [random_vec(b, 4, 50) for _ in range(5)]


def test_streams_are_independent_and_reproducible():
    first = [random_rat(stream_rng(3, 600), 100) for _ in range(3)]
    again = [random_rat(stream_rng(3, 600), 100) for _ in range(3)]
    assert first == again
    xs = stream_rng(3, 600)
    ys = stream_rng(3, 700)
    assert [random_rat(xs, 10**6) for _ in range(4)] != [random_rat(ys, 10**6) for _ in range(4)]


def test_random_rat_bounds():
    rng = make_rng(1)
    for _ in range(200):
        q = random_rat(rng, 5)
        assert isinstance(q, Fraction)
        assert abs(q) <= 5
        assert q.denominator <= 5


def test_random_dim_in_range():
    rng = make_rng(2)
    seen = {random_dim(rng, (0, 3)) for _ in range(200)}
    assert seen == {0, 1, 2, 3}


def test_random_nonzero_vec():
    rng = make_rng(3)
    for _ in range(100):
        assert not zvecp(random_nonzero_vec(rng, 3, 2))


def test_dependent_pair_is_dependent():
    rng = make_rng(4)
    for n in (0, 1, 3):
        for _ in range(50):
            u, v, a = dependent_pair(rng, n, 20)
            assert vec_equal(u, scalar_mul(a, v))


def test_collinear_triple_is_tight():
    rng = make_rng(5)
    for _ in range(50):
        assert triangle_tight(*collinear_triple(rng, 3, 20))


def test_hyperreal_generators_respect_their_class():
    rng = make_rng(6)
    for _ in range(100):
        assert is_i_small(random_small_lc(rng, 20))
        assert is_i_limited(random_limited_lc(rng, 20))


@pytest.mark.parametrize("kwargs", [
    {"cases": 0},
    {"dims": (3, 1)},
    {"dims": (-1, 2)},
    {"magnitude": 0},
    {"probe_orders": ()},
    {"probe_orders": (0, 1)},
    {"seed": -1},
])
def test_validate_rejects(kwargs):
    with pytest.raises(InputError):
        RunConfig(**kwargs).validate()


def test_config_as_dict():
    assert RunConfig().validate().as_dict() == {
        "seed": 20180101,
        "cases": 1000,
        "dims": [0, 8],
        "magnitude": 100,
        "probe_orders": [1, 2],
    }
