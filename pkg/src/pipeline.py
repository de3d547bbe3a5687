"""
Verification runner.

Runs one check battery and writes a report. Each subcommand either reads a
batch input file or, when no file is given, generates a seeded battery:

  axioms        vector-space and inner-product laws over rationals and
                hyperreals, the rational field laws, the hyperreal laws and
                the surd cross-checks
  cs [FILE]     classify, certify and replay vector pairs
  replay [FILE] cs with the replay steps of every pair in the report
  metric [FILE] metric axioms on vector triples
  continuity [FILE]
                continuity probes for an expression (builtin battery when no
                file is given) plus the entry-level contracts over LC pairs

Exit codes:
  0  every check passed
  1  a continuity violation was found in a user expression
  2  input error (unreadable file, bad flag, or rejected records)
  3  internal consistency fault: a theorem evaluated to false

Usage:
  python -m src.pipeline axioms --seed 42 --cases 1000 --dims 0..8
  python -m src.pipeline cs data/fixtures/cs_pairs.txt --format structured
  python -m src.pipeline continuity data/fixtures/sgn_control.txt
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Callable

# Add project root to path
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

from src.cauchy_schwarz import ConsistencyFault
from src.continuity import ArityError, ExprSyntaxError, format_expr
from src.generate import (
    DEFAULT_CASES,
    DEFAULT_DIMS,
    DEFAULT_MAGNITUDE,
    DEFAULT_ORDERS,
    DEFAULT_SEED,
    RunConfig,
)
from src.ingest import InputError, load_continuity_file, load_vector_records
from src.report import EXIT_FAULT, EXIT_INPUT_ERROR, Report
from src.scalar import DomainError
from src.suites import cs_battery, metric_battery
from src.suites.continuity_battery import check_lc_pair, check_probe, run_generated
from src.suites.field_laws import hyperreal_laws, rat_laws, surd_laws
from src.suites.laws import run_laws
from src.suites.vector_laws import vector_laws
from src.vector import LC_FIELD, RAT, DimensionError

log = logging.getLogger(__name__)

USER_ERRORS = (InputError, DomainError, DimensionError, ExprSyntaxError, ArityError)

QUIET = False


def _progress(message: str) -> None:
    if not QUIET:
        print(message, file=sys.stderr)


def _run_case(report: Report, line: int | None, case: Callable[[], object]) -> None:
    """Run one case; bad input is recorded against its line, faults against the run."""
    try:
        case()
    except ConsistencyFault as exc:
        report.add_fault(f"line {line}: {exc}" if line is not None else str(exc))
    except ValueError as exc:
        log.warning("line %s rejected: %s", line, exc)
        report.add_error(line, str(exc))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_axioms(config: RunConfig) -> Report:
    report = Report("axioms", config.as_dict())
    suites = (
        ("vector/rat", vector_laws(RAT), 100),
        ("vector/lc", vector_laws(LC_FIELD), 200),
        ("rat field", rat_laws(), 300),
        ("hyperreal", hyperreal_laws(), 400),
        ("surd", surd_laws(), 500),
    )
    for group, laws, stream in suites:
        _progress(f"Running {group} laws...")
        run_laws(report, group, laws, config, stream)
    return report


def cmd_cs(config: RunConfig, path: Path | None = None, replay_detail: bool = False) -> Report:
    report = Report("replay" if replay_detail else "cs", config.as_dict(),
                    source=path.name if path else "generated")
    if path is None:
        _progress(f"Checking {config.cases} generated pairs...")
        for i, (kind, u, v, a) in enumerate(cs_battery.generated_pairs(config)):
            _run_case(report, None, lambda: cs_battery.check_pair(report, i, u, v, kind=kind, witness=a))
        return report

    _progress(f"Checking pairs from {path}...")
    for i, rec in enumerate(load_vector_records(path, 2)):
        if rec.error is not None:
            report.add_error(rec.line, rec.error)
            continue
        u, v = rec.vectors
        _run_case(report, rec.line, lambda: cs_battery.check_pair(
            report, i, u, v, line=rec.line, detail=True, replay_detail=replay_detail,
        ))
    return report


def cmd_replay(config: RunConfig, path: Path | None = None) -> Report:
    return cmd_cs(config, path, replay_detail=True)


def cmd_metric(config: RunConfig, path: Path | None = None) -> Report:
    report = Report("metric", config.as_dict(), source=path.name if path else "generated")
    if path is None:
        _progress(f"Checking {config.cases} generated triples...")
        for i, (kind, x, y, z) in enumerate(metric_battery.generated_triples(config)):
            _run_case(report, None, lambda: metric_battery.check_triple(report, i, x, y, z, kind=kind))
        return report

    _progress(f"Checking triples from {path}...")
    for i, rec in enumerate(load_vector_records(path, 3)):
        if rec.error is not None:
            report.add_error(rec.line, rec.error)
            continue
        x, y, z = rec.vectors
        _run_case(report, rec.line, lambda: metric_battery.check_triple(
            report, i, x, y, z, line=rec.line, detail=True,
        ))
    return report


def cmd_continuity(config: RunConfig, path: Path | None = None) -> Report:
    report = Report("continuity", config.as_dict(), source=path.name if path else "generated")
    if path is None:
        _progress(f"Probing the builtin battery, {config.cases} probes per order...")
        run_generated(report, config)
        return report

    _progress(f"Probing {path}...")
    job = load_continuity_file(path)
    report.config = {**report.config, "expr": format_expr(job.expr), "arity": job.expr.arity}
    for line, message in job.errors:
        report.add_error(line, message)

    index = 0
    default_orders = sorted(set(config.probe_orders))
    for spec in job.probes:
        for k in [spec.k] if spec.k is not None else default_orders:
            _run_case(report, spec.line, lambda: check_probe(
                report, index, job.expr, job.source, spec.x, spec.h, k,
                user=not job.from_builtin, line=spec.line, detail=True,
            ))
            index += 1
    for line, x, y in job.lc_pairs:
        _run_case(report, line, lambda: check_lc_pair(report, x, y))
    return report


# ---------------------------------------------------------------------------
# Command line
# ---------------------------------------------------------------------------

def _dims(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from exc


def _orders(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--cases", type=int, default=DEFAULT_CASES,
                        help="cases per law / generated battery size")
    common.add_argument("--dims", type=_dims, default=DEFAULT_DIMS, metavar="LO..HI")
    common.add_argument("--magnitude", type=int, default=DEFAULT_MAGNITUDE,
                        help="bound on numerators and denominators of generated rationals")
    common.add_argument("--orders", type=_orders, default=DEFAULT_ORDERS, metavar="K1,K2",
                        help="probe orders k for y = x + eps^k * h")
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--out", type=Path, default=None, help="write the report here")
    common.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    common.add_argument("--verbose", "-v", action="store_true")
    common.add_argument("--quiet", "-q", action="store_true")

    parser = argparse.ArgumentParser(description="Exact checks of inner-product and continuity theorems")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("axioms", parents=[common], help="vector, field and hyperreal law suites")
    for name, help_text in (
        ("cs", "Cauchy-Schwarz certificates for vector pairs"),
        ("replay", "cs with every replay step in the report"),
        ("metric", "metric axioms for vector triples"),
        ("continuity", "continuity probes for an expression"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", nargs="?", type=Path, default=None,
                       help="batch input file (text, or JSON by .json suffix)")
    return parser


def main(argv: list[str] | None = None) -> int:
    global QUIET
    args = build_parser().parse_args(argv)
    QUIET = args.quiet

    level = logging.INFO if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)

    started = time.perf_counter()
    try:
        config = RunConfig(
            seed=args.seed,
            cases=args.cases,
            dims=args.dims,
            magnitude=args.magnitude,
            probe_orders=args.orders,
        ).validate()
        if args.command == "axioms":
            report = cmd_axioms(config)
        else:
            command = {
                "cs": cmd_cs,
                "replay": cmd_replay,
                "metric": cmd_metric,
                "continuity": cmd_continuity,
            }[args.command]
            report = command(config, args.input)
    except USER_ERRORS as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ConsistencyFault as exc:
        log.error("consistency fault: %s", exc)
        print(f"consistency fault: {exc}", file=sys.stderr)
        return EXIT_FAULT

    if args.timing:
        report.timing = {"elapsed": time.perf_counter() - started}
    report.write(args.format, args.out)
    _progress(f"{report.command}: {report.verdict} ({len(report.checks)} checks, "
              f"{len(report.errors)} rejected, {len(report.faults)} faults)")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
