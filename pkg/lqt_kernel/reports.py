"""
Verification reports.

Every verifier in lqt-kernel returns a Report made of AxiomChecks instead of
raising on the first failure; constructors that certify a structure call
``Report.raise_on_failure`` to turn a failed report into a VerificationError.

Design rationale:
    Witness lists are sorted and capped so that identical inputs produce
    byte-identical reports regardless of sweep order or thread count.
    Timing is collected but only serialised on request.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Literal, Sequence, TypeVar

from .exceptions import VerificationError

logger = logging.getLogger(__name__)

Status = Literal["pass", "fail", "skipped"]

MAX_WITNESSES = 8

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True, slots=True)
class AxiomCheck:
    """Outcome of one named axiom over a sweep of basis tuples.

    Attributes:
        name: Axiom identifier, e.g. ``"coassociativity"`` or ``"CP1"``.
        status: ``"pass"``, ``"fail"`` or ``"skipped"`` (nothing fit the budget).
        attempted: Number of basis tuples actually checked.
        skipped: Number of tuples left out because they exceed the budget.
        witnesses: First failing tuples, sorted, at most MAX_WITNESSES.
        note: Free-form remark (convention flags, variant names).
    """

    name: str
    status: Status
    attempted: int = 0
    skipped: int = 0
    witnesses: tuple[str, ...] = ()
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "status": self.status,
            "attempted": self.attempted,
            "skipped": self.skipped,
        }
        if self.witnesses:
            data["witnesses"] = list(self.witnesses)
        if self.note:
            data["note"] = self.note
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AxiomCheck":
        return cls(
            name=data["name"],
            status=data["status"],
            attempted=data.get("attempted", 0),
            skipped=data.get("skipped", 0),
            witnesses=tuple(data.get("witnesses", ())),
            note=data.get("note", ""),
        )


class Tally:
    """Accumulates the outcomes of one axiom during a sweep."""

    def __init__(self, name: str, note: str = "") -> None:
        self.name = name
        self.note = note
        self.attempted = 0
        self.skipped = 0
        self.failures: list[str] = []

    def record(self, ok: bool, witness: Any) -> None:
        self.attempted += 1
        if not ok:
            self.failures.append(witness if isinstance(witness, str) else repr(witness))

    def skip(self, count: int = 1) -> None:
        self.skipped += count

    def result(self) -> AxiomCheck:
        if self.failures:
            status: Status = "fail"
        elif self.attempted == 0 and self.skipped:
            status = "skipped"
        else:
            status = "pass"
        witnesses = tuple(sorted(set(self.failures))[:MAX_WITNESSES])
        return AxiomCheck(self.name, status, self.attempted, self.skipped, witnesses, self.note)


@dataclass
class Report:
    """Ordered axiom checks plus the design-decision ledger.

    Attributes:
        title: What was verified.
        checks: AxiomChecks in execution order.
        ledger: Decisions and arbitration outcomes (R-unit variant, characters...).
        dimensions: Per-degree dimensions of the structures involved.
        timing: Seconds per phase; excluded from serialisation unless requested.
    """

    title: str
    checks: list[AxiomCheck] = field(default_factory=list)
    ledger: dict[str, Any] = field(default_factory=dict)
    dimensions: dict[str, list[int]] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> AxiomCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def names(self) -> list[str]:
        return [check.name for check in self.checks]

    def add(self, check: AxiomCheck | Tally) -> None:
        self.checks.append(check.result() if isinstance(check, Tally) else check)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for check in other.checks:
            if prefix:
                check = AxiomCheck(
                    f"{prefix}{check.name}",
                    check.status,
                    check.attempted,
                    check.skipped,
                    check.witnesses,
                    check.note,
                )
            self.checks.append(check)
        self.ledger.update(other.ledger)
        self.dimensions.update(other.dimensions)

    def raise_on_failure(self, message: str) -> None:
        failed = self.failures()
        if failed:
            first = failed[0]
            witness = first.witnesses[0] if first.witnesses else "?"
            raise VerificationError(f"{message}: {first.name} fails at {witness}", check=first)

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "title": self.title,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "ledger": dict(sorted(self.ledger.items())),
            "dimensions": dict(sorted(self.dimensions.items())),
        }
        if include_timing:
            data["timing"] = dict(sorted(self.timing.items()))
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        return cls(
            title=data["title"],
            checks=[AxiomCheck.from_dict(c) for c in data.get("checks", [])],
            ledger=dict(data.get("ledger", {})),
            dimensions={k: list(v) for k, v in data.get("dimensions", {}).items()},
            timing=dict(data.get("timing", {})),
        )

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for check in self.checks:
            line = f"  {check.status:>7}  {check.name} ({check.attempted} checked"
            if check.skipped:
                line += f", {check.skipped} skipped"
            line += ")"
            if check.witnesses:
                line += f"  e.g. {check.witnesses[0]}"
            if check.note:
                line += f"  [{check.note}]"
            lines.append(line)
        return "\n".join(lines)


# ──── Sweeps ────


def sweep(items: Sequence[T] | Iterable[T], fn: Callable[[T], R], threads: int = 1) -> list[R]:
    """Apply fn to every item, in parallel when threads > 1, preserving order."""
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
