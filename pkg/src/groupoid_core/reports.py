"""
Violation reports returned by the check_* operations.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Tuple


@dataclass(frozen=True)
class Violation:
    """A failed instance of a named property"""
    kind: str
    witness: Tuple[str, ...]
    detail: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness), "detail": self.detail}


@dataclass
class CheckReport:
    """Exhaustive check outcome; empty violation list means pass"""
    subject: str = ""
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, kind: str, witness: Iterable[str], detail: str = "") -> None:
        self.violations.append(Violation(kind, tuple(str(w) for w in witness), detail))

    def to_dict(self) -> dict:
        return {"subject": self.subject, "passed": self.passed,
                "violations": [v.to_dict() for v in self.violations]}
