"""
Run reports.

A Report collects everything one subcommand found: the run metadata, one
CheckOutcome per named check (with case and failure counts and the first
counterexample), per-case details for file-driven runs, rejected input
records and consistency faults.

Two renderings:
  - text: a header, the check table (pandas DataFrame.to_string) and the
    per-case lines
  - structured: JSON with sorted keys

Nothing in a report depends on wall-clock time unless timing was requested,
so two runs with the same seed and inputs render byte-identical output.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import pandas as pd

log = logging.getLogger(__name__)

Verdict = Literal["pass", "violation", "fail"]
CheckKind = Literal["law", "violation"]

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2
EXIT_FAULT = 3


@dataclass
class CheckOutcome:
    """
    Tally for one check. A failed "law" check means the arithmetic is broken;
    a failed "violation" check means a user expression was refuted.
    """

    name: str
    group: str
    kind: CheckKind = "law"
    cases: int = 0
    failures: int = 0
    exempt: int = 0
    example: str | None = None

    def record(self, ok: bool | None, example: str = "") -> None:
        """ok=None counts the case as exempt (an oracle could not decide it)."""
        self.cases += 1
        if ok is None:
            self.exempt += 1
        elif not ok:
            self.failures += 1
            if self.example is None:
                self.example = example
                log.warning("%s/%s failed on %s", self.group, self.name, example)

    @property
    def status(self) -> str:
        if not self.failures:
            return "pass"
        return "violation" if self.kind == "violation" else "fail"

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "group": self.group,
            "kind": self.kind,
            "cases": self.cases,
            "failures": self.failures,
            "exempt": self.exempt,
            "example": self.example,
            "status": self.status,
        }


@dataclass
class Report:
    command: str
    config: dict[str, Any]
    source: str = "generated"
    checks: list[CheckOutcome] = field(default_factory=list)
    cases: list[dict[str, Any]] = field(default_factory=list)
    errors: list[dict[str, Any]] = field(default_factory=list)
    faults: list[str] = field(default_factory=list)
    timing: dict[str, float] | None = None

    def check(self, name: str, group: str, kind: CheckKind = "law") -> CheckOutcome:
        """The outcome for (group, name), created on first use."""
        for c in self.checks:
            if c.name == name and c.group == group:
                return c
        outcome = CheckOutcome(name, group, kind)
        self.checks.append(outcome)
        return outcome

    def add_case(self, index: int, summary: str, **detail: Any) -> None:
        self.cases.append({"index": index, "summary": summary, **detail})

    def add_error(self, line: int | None, message: str) -> None:
        self.errors.append({"line": line, "message": message})

    def add_fault(self, message: str) -> None:
        log.error("consistency fault: %s", message)
        self.faults.append(message)

    # -- verdict ------------------------------------------------------------

    @property
    def failed_checks(self) -> list[CheckOutcome]:
        return [c for c in self.checks if c.failures]

    @property
    def verdict(self) -> Verdict:
        failed = self.failed_checks
        if self.faults or any(c.kind == "law" for c in failed):
            return "fail"
        if failed:
            return "violation"
        return "pass"

    @property
    def exit_code(self) -> int:
        verdict = self.verdict
        if verdict == "fail":
            return EXIT_FAULT
        if self.errors:
            return EXIT_INPUT_ERROR
        if verdict == "violation":
            return EXIT_VIOLATION
        return EXIT_PASS

    # -- rendering ----------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "command": self.command,
            "config": self.config,
            "source": self.source,
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "totals": {
                "checks": len(self.checks),
                "failed_checks": len(self.failed_checks),
                "cases": sum(c.cases for c in self.checks),
                "errors": len(self.errors),
                "faults": len(self.faults),
            },
            "checks": [c.to_dict() for c in self.checks],
            "cases": sorted(self.cases, key=lambda c: c["index"]),
            "errors": self.errors,
            "faults": self.faults,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_structured(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def check_table(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "group": c.group,
                    "check": c.name,
                    "cases": c.cases,
                    "failures": c.failures,
                    "exempt": c.exempt,
                    "status": c.status,
                }
                for c in self.checks
            ],
            columns=["group", "check", "cases", "failures", "exempt", "status"],
        )

    def to_text(self) -> str:
        lines = [
            f"{self.command}: {self.verdict.upper()} (exit {self.exit_code})",
            f"  source: {self.source}",
            "  config: " + ", ".join(f"{k}={v}" for k, v in sorted(self.config.items())),
        ]
        if self.timing is not None:
            lines.append("  timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(self.timing.items())))

        lines.append("")
        if self.checks:
            lines.append(self.check_table().to_string(index=False))
        else:
            lines.append("(no checks ran)")

        counterexamples = [c for c in self.checks if c.example is not None]
        if counterexamples:
            lines.append("\nCounterexamples:")
            for c in counterexamples:
                lines.append(f"  {c.group}/{c.name}: {c.example}")

        if self.cases:
            lines.append("\nCases:")
            for case in sorted(self.cases, key=lambda c: c["index"]):
                lines.append(f"  #{case['index']:<4d} {case['summary']}")

        if self.errors:
            lines.append(f"\nRejected input ({len(self.errors)}):")
            for e in self.errors:
                where = f"line {e['line']}" if e["line"] is not None else "input"
                lines.append(f"  {where}: {e['message']}")

        if self.faults:
            lines.append(f"\nConsistency faults ({len(self.faults)}):")
            for f in self.faults:
                lines.append(f"  {f}")

        return "\n".join(lines) + "\n"

    def render(self, fmt: Literal["text", "structured"]) -> str:
        return self.to_structured() if fmt == "structured" else self.to_text()

    def write(self, fmt: Literal["text", "structured"], out: str | Path | None = None) -> None:
        text = self.render(fmt)
        if out is None:
            sys.stdout.write(text)
            return
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        log.info("report written to %s", path)
