"""
Seeded law runner shared by the axiom suites.

A Law pairs a generator of random arguments with a predicate that must be
true for every draw. run_laws evaluates each law on `config.cases` draws,
tallies failures on the report and keeps the first counterexample.

Every law draws from its own generator, keyed by the seed, the suite stream
and the CRC-32 of the law name, so adding or reordering laws never changes
the inputs another law sees.
"""

from __future__ import annotations

import logging
import zlib
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from src.cauchy_schwarz import ConsistencyFault
from src.generate import RunConfig, stream_rng
from src.report import Report

log = logging.getLogger(__name__)

Draw = Callable[[np.random.Generator, RunConfig], tuple[Any, ...]]


@dataclass(frozen=True)
class Law:
    name: str
    draw: Draw
    # True holds, False fails, None when the case is outside what the law can decide
    holds: Callable[..., bool | None]


def describe(args: Sequence[Any]) -> str:
    return "; ".join(str(a) for a in args)


def run_laws(
    report: Report,
    group: str,
    laws: Sequence[Law],
    config: RunConfig,
    stream: int,
    cases: int | None = None,
) -> None:
    cases = config.cases if cases is None else cases
    log.info("running %d %s laws on %d cases each", len(laws), group, cases)
    for law in laws:
        rng = stream_rng(config.seed, stream, zlib.crc32(law.name.encode()))
        outcome = report.check(law.name, group)
        for _ in range(cases):
            args = law.draw(rng, config)
            try:
                ok = law.holds(*args)
            except ConsistencyFault as exc:
                report.add_fault(f"{group}/{law.name}: {exc}")
                ok = False
            outcome.record(ok, describe(args))
