"""
Input ingestion and standardization.

Converts batch input files into vectors, expressions and probe lists. Two
formats are accepted for every file kind:

  - line-oriented text (default): one record per line, '#' starts a comment
  - JSON (files ending in .json)

Vector files (cs, replay, metric):

    # u            v
    [2, 4]         [1, 2]
    [1, -1/2]      ["3/4", 0]

  JSON: {"pairs": [[["2", "4"], ["1", "2"]], ...]} (or "triples"), or a bare
  list of records.

Continuity files:

    arity 3
    expr x1 + x2 + x3          # or: builtin sum(3)
    probe [1, 2, 3] [1, 1, 1] 1
    probe [0, 0, 0] [1, -1, 2]         # no order: every --orders value
    lc_pair [[[1, "1"]], [[2, "1"]]] [[], []]

  JSON: {"arity": 3, "expr": "...", "probes": [{"x": [...], "h": [...], "k": 1}],
         "lc_pairs": [[x, y], ...]}

Rationals are "p/q" strings or integers; floats are accepted and rationalized
exactly. Hyperreals are [[exponent, "p/q"], ...] lists.

A record that cannot be standardized is kept with its error and line number
so the run can report it and carry on. A file that cannot be read at all
raises InputError.

Usage:
    from src.ingest import load_vector_records

    records = load_vector_records("data/fixtures/cs_pairs.txt", count=2)
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from src.continuity import ArityError, Expr, ExprSyntaxError, builtin, parse_expr
from src.hyperreal import LC
from src.scalar import DomainError, to_rat
from src.vector import LC_FIELD, RAT, Vec

log = logging.getLogger(__name__)

RE_VECTOR = re.compile(r"\[([^\[\]]*)\]")
RE_PROBE = re.compile(r"^(\[[^\[\]]*\])\s*(\[[^\[\]]*\])\s*(\d+)?$")

# Accepted spellings for JSON keys
KEY_ALIASES: dict[str, list[str]] = {
    "records":  ["records", "pairs", "triples", "cases", "vectors"],
    "expr":     ["expr", "expression", "f"],
    "builtin":  ["builtin", "named"],
    "arity":    ["arity", "n", "dim"],
    "probes":   ["probes", "battery"],
    "lc_pairs": ["lc_pairs", "entries"],
}


class InputError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _resolve_key(data: dict[str, Any], canonical: str) -> Optional[Any]:
    for alias in KEY_ALIASES[canonical]:
        if alias in data:
            return data[alias]
    return None


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------

def standardize_scalar(raw: Any) -> Fraction:
    if isinstance(raw, str):
        raw = raw.strip().strip('"').strip("'")
    try:
        return to_rat(raw)
    except DomainError as exc:
        raise InputError(str(exc)) from exc


def standardize_vector(raw: Any) -> Vec[Fraction]:
    """A list of scalars, or the text "[a, b, ...]"."""
    if isinstance(raw, str):
        m = RE_VECTOR.fullmatch(raw.strip())
        if not m:
            raise InputError(f"not a bracketed vector: {raw!r}")
        raw = [s for s in m.group(1).split(",") if s.strip()]
    if not isinstance(raw, list):
        raise InputError(f"expected a list of rationals, got {raw!r}")
    return Vec(tuple(standardize_scalar(x) for x in raw), RAT)


def standardize_count(raw: Any, name: str, minimum: int, line: int | None = None) -> int:
    """An integer field such as arity or a probe order. Bools, floats and text are rejected."""
    if isinstance(raw, str) and re.fullmatch(r"\s*[+-]?\d+\s*", raw):
        raw = int(raw)
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise InputError(f"{name} must be an integer, got {raw!r}", line)
    if raw < minimum:
        raise InputError(f"{name} must be >= {minimum}, got {raw}", line)
    return raw


def standardize_lc_vector(raw: Any) -> Vec[LC]:
    if not isinstance(raw, list):
        raise InputError(f"expected a list of hyperreals, got {raw!r}")
    try:
        return Vec(tuple(LC.from_pairs(x) for x in raw), LC_FIELD)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad hyperreal vector {raw!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Vector records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VectorRecord:
    """One pair or triple. Exactly one of `vectors` and `error` is set."""

    line: int
    vectors: tuple[Vec[Fraction], ...] | None = None
    error: str | None = None


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _standardize_record(raw: Any, count: int, line: int) -> VectorRecord:
    try:
        if isinstance(raw, str):
            groups = RE_VECTOR.findall(raw)
            leftover = RE_VECTOR.sub("", raw).replace(";", "").replace(",", "").strip()
            if leftover:
                raise InputError(f"unexpected text {leftover!r}")
            raw = [[s for s in g.split(",") if s.strip()] for g in groups]
        if not isinstance(raw, list) or len(raw) != count:
            got = len(raw) if isinstance(raw, list) else 0
            raise InputError(f"expected {count} vectors, found {got}")
        return VectorRecord(line, tuple(standardize_vector(v) for v in raw))
    except InputError as exc:
        log.warning("line %d skipped: %s", line, exc)
        return VectorRecord(line, error=str(exc))


def load_vector_records(path: str | Path, count: int) -> list[VectorRecord]:
    """Load a pair (count=2) or triple (count=3) file."""
    path = Path(path)
    text = _read(path)
    records: list[VectorRecord] = []

    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path.name}: {exc.msg}", exc.lineno) from exc
        items = _resolve_key(data, "records") if isinstance(data, dict) else data
        if not isinstance(items, list):
            raise InputError(f"{path.name}: no list of records found")
        for i, item in enumerate(items, 1):
            records.append(_standardize_record(item, count, i))
    else:
        for i, raw_line in enumerate(text.splitlines(), 1):
            line = raw_line.split("#", 1)[0].strip()
            if line:
                records.append(_standardize_record(line, count, i))

    bad = sum(r.error is not None for r in records)
    log.info("loaded %d records from %s (%d rejected)", len(records), path.name, bad)
    return records


# ---------------------------------------------------------------------------
# Continuity jobs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeSpec:
    line: int
    x: Vec[Fraction]
    h: Vec[Fraction]
    k: int | None


@dataclass
class ContinuityJob:
    expr: Expr
    source: str
    from_builtin: bool
    probes: list[ProbeSpec] = field(default_factory=list)
    lc_pairs: list[tuple[int, Vec[LC], Vec[LC]]] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)


def _resolve_expr(text: str | None, name: str | None, arity: int | None, line: int) -> tuple[Expr, str, bool]:
    try:
        if name is not None:
            e = builtin(str(name))
            if arity is not None and arity != e.arity:
                raise InputError(f"builtin {name} has arity {e.arity}, declared {arity}", line)
            return e, str(name), True
        if text is None:
            raise InputError("no expr or builtin given", line)
        if arity is None:
            raise InputError("expr needs a declared arity", line)
        return parse_expr(str(text), int(arity)), str(text), False
    except (ExprSyntaxError, ArityError, DomainError) as exc:
        raise InputError(str(exc), line) from exc


def _two_json_values(text: str) -> tuple[Any, Any]:
    """Two JSON values written side by side, optionally comma separated."""
    decoder = json.JSONDecoder()
    first, end = decoder.raw_decode(text)
    rest = text[end:].lstrip(" ,\t")
    second, end = decoder.raw_decode(rest)
    if rest[end:].strip():
        raise ValueError(f"trailing text {rest[end:].strip()!r}")
    return first, second


def load_continuity_file(path: str | Path) -> ContinuityJob:
    path = Path(path)
    text = _read(path)
    if path.suffix.lower() == ".json":
        return _continuity_from_json(path, text)

    arity: int | None = None
    expr_text: str | None = None
    name: str | None = None
    expr_line = 0
    probes: list[tuple[int, str]] = []
    lc_lines: list[tuple[int, str]] = []

    for i, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "arity":
            arity = standardize_count(rest, "arity", 0, i)
        elif keyword == "expr":
            expr_text, expr_line = rest, i
        elif keyword == "builtin":
            name, expr_line = rest, i
        elif keyword == "probe":
            probes.append((i, rest))
        elif keyword == "lc_pair":
            lc_lines.append((i, rest))
        else:
            raise InputError(f"unknown keyword {keyword!r}", i)

    expr, source, from_builtin = _resolve_expr(expr_text, name, arity, expr_line)
    job = ContinuityJob(expr, source, from_builtin)

    for i, rest in probes:
        m = RE_PROBE.match(rest)
        if not m:
            job.errors.append((i, "probe needs '[x] [h]' and an optional order"))
            log.warning("line %d skipped: malformed probe", i)
            continue
        try:
            k = standardize_count(m.group(3), "probe order", 1) if m.group(3) else None
            job.probes.append(ProbeSpec(i, standardize_vector(m.group(1)),
                                        standardize_vector(m.group(2)), k))
        except InputError as exc:
            job.errors.append((i, str(exc)))
            log.warning("line %d skipped: %s", i, exc)

    for i, rest in lc_lines:
        try:
            x, y = _two_json_values(rest)
            job.lc_pairs.append((i, standardize_lc_vector(x), standardize_lc_vector(y)))
        except (ValueError, InputError) as exc:
            job.errors.append((i, f"bad lc_pair: {exc}"))
            log.warning("line %d skipped: bad lc_pair", i)

    log.info("loaded %s with %d probes from %s", source, len(job.probes), path.name)
    return job


def _continuity_from_json(path: Path, text: str) -> ContinuityJob:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path.name}: {exc.msg}", exc.lineno) from exc
    if not isinstance(data, dict):
        raise InputError(f"{path.name}: expected a JSON object")

    arity = _resolve_key(data, "arity")
    expr, source, from_builtin = _resolve_expr(
        _resolve_key(data, "expr"), _resolve_key(data, "builtin"),
        standardize_count(arity, "arity", 0, 1) if arity is not None else None, 1,
    )
    job = ContinuityJob(expr, source, from_builtin)

    for i, item in enumerate(_resolve_key(data, "probes") or [], 1):
        try:
            if not isinstance(item, dict):
                raise InputError("probe must be an object with x, h and k")
            k = item.get("k")
            job.probes.append(ProbeSpec(
                i, standardize_vector(item.get("x")), standardize_vector(item.get("h")),
                standardize_count(k, "probe order", 1) if k is not None else None,
            ))
        except (InputError, ValueError) as exc:
            job.errors.append((i, str(exc)))
            log.warning("probe %d skipped: %s", i, exc)

    for i, item in enumerate(_resolve_key(data, "lc_pairs") or [], 1):
        try:
            x, y = item
            job.lc_pairs.append((i, standardize_lc_vector(x), standardize_lc_vector(y)))
        except (TypeError, ValueError) as exc:
            job.errors.append((i, f"bad lc_pair: {exc}"))
            log.warning("lc_pair %d skipped: %s", i, exc)
    return job
