from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .linalg import Matrix
from .scalars import format_scalar


@dataclass(frozen=True)
class Defect:
    """One violated instance of a checked identity.

    ``location`` starts with a condition id (a string) followed by the basis
    indices/combos at which the identity failed.
    """

    location: tuple
    expected: Any = None
    actual: Any = None
    note: str | None = None


def _location_key(loc):
    # ints sort before strings, which sort before tuples; keeps mixed keys comparable
    if isinstance(loc, tuple):
        return (2, tuple(_location_key(x) for x in loc))
    if isinstance(loc, str):
        return (1, loc)
    return (0, loc)


@dataclass
class Report:
    command: str
    defects: list[Defect] = field(default_factory=list)
    metrics: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if not self.defects else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self) -> bool:
        return self.passed

    def add(self, location: tuple, expected=None, actual=None, note: str | None = None) -> None:
        self.defects.append(Defect(tuple(location), expected, actual, note))

    def extend(self, other: "Report", prefix: str | None = None) -> "Report":
        for d in other.defects:
            loc = (prefix,) + d.location if prefix else d.location
            self.defects.append(Defect(loc, d.expected, d.actual, d.note))
        return self

    def sorted(self) -> "Report":
        self.defects.sort(key=lambda d: _location_key(d.location))
        return self

    def conditions(self) -> set[str]:
        """Condition ids that failed somewhere."""
        return {d.location[0] for d in self.defects}

    def to_json(self) -> dict:
        self.sorted()
        return {
            "command": self.command,
            "verdict": self.verdict,
            "defects": [_defect_json(d) for d in self.defects],
            "metrics": to_plain(self.metrics),
            **({"error": self.error} if self.error is not None else {}),
        }


def _defect_json(d: Defect) -> dict:
    out = {
        "location": to_plain(d.location),
        "expected": to_plain(d.expected, scalars=True),
        "actual": to_plain(d.actual, scalars=True),
    }
    if d.note is not None:
        out["note"] = d.note
    return out


def to_plain(obj, scalars: bool = False):
    """Convert scalars, tuples and matrices into JSON-ready values.

    With ``scalars=True`` plain ints are treated as field elements and
    rendered ``"p/1"``; otherwise they stay ints (indices, dimensions).
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return format_scalar(obj) if scalars else obj
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, Matrix):
        return [[format_scalar(x) for x in r] for r in obj.entries]
    if isinstance(obj, dict):
        return {str(k): to_plain(v, scalars) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [to_plain(x, scalars) for x in obj]
    return str(obj)
