"""Structured pass/fail reports carrying first-counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Witness:
    """The first counterexample found by a check.

    `context` names the group elements and basis indices involved, in a
    stable order; `left` and `right` are the two values that should have
    agreed, already formatted as exact strings.
    """

    context: tuple[tuple[str, str], ...]
    left: str
    right: str


@dataclass(frozen=True)
class CheckEntry:
    name: str
    passed: bool
    witness: Witness | None = None


@dataclass(frozen=True)
class CheckReport:
    entries: tuple[CheckEntry, ...] = ()

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    def failures(self) -> tuple[CheckEntry, ...]:
        return tuple(entry for entry in self.entries if not entry.passed)

    def merge(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.entries + other.entries)

    def entry(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def passing(name: str) -> CheckEntry:
    return CheckEntry(name=name, passed=True)


def failing(name: str, context: Sequence[tuple[str, str]], left: str, right: str) -> CheckEntry:
    return CheckEntry(
        name=name, passed=False, witness=Witness(tuple(context), str(left), str(right))
    )


def entry_from(name: str, witness: Witness | None) -> CheckEntry:
    return CheckEntry(name=name, passed=witness is None, witness=witness)
