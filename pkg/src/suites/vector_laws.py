"""
Vector-space and inner-product laws, checked over a scalar field.

The same law list runs twice: once over rationals and once over hyperreal
(Levi-Civita) scalars, since every law is a field-generic theorem. Linearity
in the second argument is checked directly and again through the symmetry
chain ⟨w, a·u + v⟩ = ⟨a·u + v, w⟩ = a⟨u,w⟩ + ⟨v,w⟩ = a⟨w,u⟩ + ⟨w,v⟩, which
is how it follows from the first-argument law.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from src.generate import RunConfig, random_dim, random_lc, random_lc_vec, random_rat, random_vec
from src.suites.laws import Law
from src.vector import (
    LC_FIELD,
    Field,
    Vec,
    dot,
    max_abs,
    norm_sq,
    scalar_mul,
    vec_add,
    vec_equal,
    vec_sub,
    vec_sub_direct,
    zero,
    zvecp,
)


def _vector(rng: np.random.Generator, n: int, config: RunConfig, field: Field) -> Vec:
    if field is LC_FIELD:
        return random_lc_vec(rng, n, config.magnitude)
    return random_vec(rng, n, config.magnitude)


def _scalar(rng: np.random.Generator, config: RunConfig, field: Field) -> Any:
    if field is LC_FIELD:
        return random_lc(rng, config.magnitude)
    return random_rat(rng, config.magnitude)


def drawer(field: Field, vectors: int, scalars: int = 0):
    """A draw of `vectors` same-dimension vectors followed by `scalars` scalars."""

    def draw(rng: np.random.Generator, config: RunConfig) -> tuple[Any, ...]:
        n = random_dim(rng, config.dims)
        vs = tuple(_vector(rng, n, config, field) for _ in range(vectors))
        return vs + tuple(_scalar(rng, config, field) for _ in range(scalars))

    return draw


def _linear_second_by_symmetry(u: Vec, v: Vec, w: Vec, a: Any) -> bool:
    lhs = dot(w, vec_add(scalar_mul(a, u), v))
    swapped = dot(vec_add(scalar_mul(a, u), v), w)
    expanded = a * dot(u, w) + dot(v, w)
    return lhs == swapped and swapped == expanded and expanded == a * dot(w, u) + dot(w, v)


def _max_abs_chain(z: Vec) -> bool:
    m = max_abs(z)
    return m * m <= norm_sq(z) and all(abs(c) <= m for c in z.entries)


def vector_laws(field: Field) -> list[Law]:
    one = field.one
    return [
        Law("add_associative", drawer(field, 3),
            lambda u, v, w: vec_equal(vec_add(vec_add(u, v), w), vec_add(u, vec_add(v, w)))),
        Law("add_commutative", drawer(field, 2),
            lambda u, v: vec_equal(vec_add(u, v), vec_add(v, u))),
        Law("add_identity", drawer(field, 1),
            lambda v: vec_equal(vec_add(v, zero(v.dim, v.field)), v)),
        Law("add_inverse", drawer(field, 1),
            lambda v: zvecp(vec_add(v, scalar_mul(-one, v)))),
        Law("scalar_associative", drawer(field, 1, 2),
            lambda v, a, b: vec_equal(scalar_mul(a, scalar_mul(b, v)), scalar_mul(a * b, v))),
        Law("scalar_identity", drawer(field, 1),
            lambda v: vec_equal(scalar_mul(one, v), v)),
        Law("distributive_over_vectors", drawer(field, 2, 1),
            lambda u, v, a: vec_equal(scalar_mul(a, vec_add(u, v)),
                                      vec_add(scalar_mul(a, u), scalar_mul(a, v)))),
        Law("distributive_over_scalars", drawer(field, 1, 2),
            lambda v, a, b: vec_equal(scalar_mul(a + b, v),
                                      vec_add(scalar_mul(a, v), scalar_mul(b, v)))),
        Law("dot_commutative", drawer(field, 2),
            lambda u, v: dot(u, v) == dot(v, u)),
        Law("dot_linear_first", drawer(field, 3, 1),
            lambda u, v, w, a: dot(vec_add(scalar_mul(a, u), v), w) == a * dot(u, w) + dot(v, w)),
        Law("dot_linear_second", drawer(field, 3, 1),
            lambda u, v, w, a: dot(w, vec_add(scalar_mul(a, u), v)) == a * dot(w, u) + dot(w, v)),
        Law("dot_linear_second_by_symmetry", drawer(field, 3, 1), _linear_second_by_symmetry),
        Law("dot_positive_definite", drawer(field, 1),
            lambda v: norm_sq(v) >= field.zero and (norm_sq(v) == field.zero) == zvecp(v)),
        Law("sub_matches_direct", drawer(field, 2),
            lambda u, v: vec_equal(vec_sub(u, v), vec_sub_direct(u, v))),
        Law("sub_anticommutative", drawer(field, 2),
            lambda u, v: vec_equal(vec_sub(u, v), scalar_mul(-one, vec_sub(v, u)))),
        Law("max_abs_below_norm", drawer(field, 1), _max_abs_chain),
        Law("cs1_nonnegative", drawer(field, 2),
            lambda u, v: dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v) >= field.zero),
    ]
