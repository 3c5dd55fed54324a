"""Per-seat audit records and property reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def format_value(value) -> Any:
    """Serialise a criterion value: ``"p/q"`` for exact rationals, 15 digits for reals."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        if value == float("-inf"):
            return "-inf"
        return float(f"{value:.15g}")
    if isinstance(value, tuple):
        return [format_value(v) for v in value]
    return value


@dataclass
class Improver:
    candidate: int
    for_value: Any  # value of delta(candidate, step-1 winner)
    against_value: Any  # value of delta(step-1 winner, candidate)
    gain: Any = None
    degenerate: bool = False


@dataclass
class SeatRecord:
    seat: int
    values: dict  # candidate index -> step-1 criterion value
    step1_tied: list
    step1_winner: int
    tie_path: str
    improvers: list = field(default_factory=list)
    elected: int = -1
    note: str = ""

    def to_dict(self, names) -> dict:
        out = {
            "seat": self.seat,
            "values": {names[i]: format_value(v) for i, v in sorted(self.values.items())},
            "step1_winner": names[self.step1_winner],
            "tie_path": self.tie_path,
            "elected": names[self.elected],
        }
        if len(self.step1_tied) > 1:
            out["step1_tied"] = [names[i] for i in self.step1_tied]
        if self.improvers:
            out["improvers"] = [
                {
                    "candidate": names[imp.candidate],
                    "for": format_value(imp.for_value),
                    "against": format_value(imp.against_value),
                    "gain": format_value(imp.gain),
                    **({"degenerate": True} if imp.degenerate else {}),
                }
                for imp in self.improvers
            ]
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ElectionTrace:
    method: str
    candidate_names: tuple
    criterion: str  # what the step-1 values mean, e.g. "quotient" or "norm"
    records: list = field(default_factory=list)
    tail: list = field(default_factory=list)  # zero-support candidates appended last

    @property
    def ordering(self) -> list[int]:
        return [r.elected for r in self.records] + list(self.tail)

    def record_for(self, candidate: int) -> SeatRecord:
        for r in self.records:
            if r.elected == candidate:
                return r
        raise KeyError(candidate)

    def to_dict(self) -> dict:
        names = self.candidate_names
        return {
            "method": self.method,
            "criterion": self.criterion,
            "seats": [r.to_dict(names) for r in self.records],
            "appended_without_support": [names[i] for i in self.tail],
        }


@dataclass
class PropertyReport:
    """Outcome of one property check; failures always carry a replayable witness."""

    name: str
    instance: str
    passed: bool
    witness: Any = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing report {self.name!r} needs a witness")

    def to_dict(self) -> dict:
        return {"property": self.name, "instance": self.instance, "passed": self.passed,
                "witness": self.witness}
