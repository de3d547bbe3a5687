"""
Seeded input generation for the check suites.

All randomness flows from one numpy Generator built by `make_rng(seed)`:
numpy.random.default_rng, i.e. the PCG64 bit generator seeded through
SeedSequence. Given the same seed and the same sequence of calls the
generated inputs are identical across runs and platforms, which is what
makes reports reproducible.

A generated rational has numerator uniform in [−M, M] and denominator uniform
in [1, M] where M is the configured magnitude, then reduced. A generated
hyperreal has up to `max_terms` terms with exponents drawn from a window,
which is how the suites get mixed valuations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src.hyperreal import LC
from src.ingest import InputError
from src.vector import LC_FIELD, RAT, Vec, scalar_mul, vec_add

DEFAULT_SEED = 20180101
DEFAULT_CASES = 1000
DEFAULT_DIMS = (0, 8)
DEFAULT_MAGNITUDE = 100
DEFAULT_ORDERS = (1, 2)
DEFAULT_LC_INV_TERMS = 16


@dataclass(frozen=True)
class RunConfig:
    seed: int = DEFAULT_SEED
    cases: int = DEFAULT_CASES
    dims: tuple[int, int] = DEFAULT_DIMS
    magnitude: int = DEFAULT_MAGNITUDE
    probe_orders: tuple[int, ...] = field(default=DEFAULT_ORDERS)

    def validate(self) -> RunConfig:
        lo, hi = self.dims
        if self.cases < 1:
            raise InputError(f"--cases must be positive, got {self.cases}")
        if lo < 0 or hi < lo:
            raise InputError(f"--dims needs 0 <= LO <= HI, got {lo}..{hi}")
        if self.magnitude < 1:
            raise InputError(f"--magnitude must be >= 1, got {self.magnitude}")
        if not self.probe_orders or any(k < 1 for k in self.probe_orders):
            raise InputError(f"--orders must be positive integers, got {self.probe_orders}")
        if not 0 <= self.seed < 2**64:
            raise InputError(f"--seed must fit in 64 bits, got {self.seed}")
        return self

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "cases": self.cases,
            "dims": list(self.dims),
            "magnitude": self.magnitude,
            "probe_orders": list(self.probe_orders),
        }


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def random_rat(rng: np.random.Generator, magnitude: int) -> Fraction:
    num = int(rng.integers(-magnitude, magnitude, endpoint=True))
    den = int(rng.integers(1, magnitude, endpoint=True))
    return Fraction(num, den)


def random_nonzero_rat(rng: np.random.Generator, magnitude: int) -> Fraction:
    q = random_rat(rng, magnitude)
    while q == 0:
        q = random_rat(rng, magnitude)
    return q


def random_lc(
    rng: np.random.Generator,
    magnitude: int,
    exponents: tuple[int, int] = (-2, 3),
    max_terms: int = 3,
) -> LC:
    """Up to max_terms terms with exponents drawn from the inclusive window."""
    lo, hi = exponents
    n = int(rng.integers(0, max_terms, endpoint=True))
    terms = [
        (int(rng.integers(lo, hi, endpoint=True)), random_rat(rng, magnitude))
        for _ in range(n)
    ]
    return LC.from_terms(terms)


def random_nonzero_lc(rng: np.random.Generator, magnitude: int, exponents=(-2, 3)) -> LC:
    x = random_lc(rng, magnitude, exponents)
    while not x:
        x = random_lc(rng, magnitude, exponents)
    return x


def random_limited_lc(rng: np.random.Generator, magnitude: int) -> LC:
    return random_lc(rng, magnitude, exponents=(0, 3))


def random_small_lc(rng: np.random.Generator, magnitude: int) -> LC:
    return random_lc(rng, magnitude, exponents=(1, 4))


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------

def random_dim(rng: np.random.Generator, dims: tuple[int, int]) -> int:
    lo, hi = dims
    return int(rng.integers(lo, hi, endpoint=True))


def random_vec(rng: np.random.Generator, n: int, magnitude: int) -> Vec[Fraction]:
    return Vec(tuple(random_rat(rng, magnitude) for _ in range(n)), RAT)


def random_nonzero_vec(rng: np.random.Generator, n: int, magnitude: int) -> Vec[Fraction]:
    """n ≥ 1 required. At least one entry is forced nonzero."""
    v = list(random_vec(rng, n, magnitude).entries)
    i = int(rng.integers(0, n))
    if v[i] == 0:
        v[i] = random_nonzero_rat(rng, magnitude)
    return Vec(tuple(v), RAT)


def random_lc_vec(
    rng: np.random.Generator,
    n: int,
    magnitude: int,
    exponents: tuple[int, int] = (-2, 3),
) -> Vec[LC]:
    return Vec(tuple(random_lc(rng, magnitude, exponents) for _ in range(n)), LC_FIELD)


def dependent_pair(
    rng: np.random.Generator, n: int, magnitude: int
) -> tuple[Vec[Fraction], Vec[Fraction], Fraction]:
    """
    (a·v, v, a) with a random a. One case in eight uses a = 0 and one in
    eight uses v = 0, so the ZeroU / ZeroV branches are exercised too.
    """
    roll = int(rng.integers(0, 8))
    if roll == 0:
        a = Fraction(0)
    else:
        a = random_nonzero_rat(rng, magnitude)
    if roll == 1 or n == 0:
        v = Vec((Fraction(0),) * n, RAT)
    else:
        v = random_nonzero_vec(rng, n, magnitude)
    return scalar_mul(a, v), v, a


def collinear_triple(
    rng: np.random.Generator, n: int, magnitude: int
) -> tuple[Vec[Fraction], Vec[Fraction], Vec[Fraction]]:
    """x, y and z = x + t·(y − x) with t in [0, 1], so z sits on the segment."""
    x = random_vec(rng, n, magnitude)
    y = random_vec(rng, n, magnitude)
    t = Fraction(int(rng.integers(0, magnitude, endpoint=True)), magnitude)
    z = vec_add(x, scalar_mul(t, vec_add(y, scalar_mul(-1, x))))
    return x, y, z


def random_direction(rng: np.random.Generator, n: int, magnitude: int) -> Vec[Fraction]:
    return random_nonzero_vec(rng, n, magnitude)


def stream_rng(seed: int, *stream: int) -> np.random.Generator:
    """An independent generator for one suite (or one law), so they can run in any order."""
    return np.random.default_rng([seed, *stream])
