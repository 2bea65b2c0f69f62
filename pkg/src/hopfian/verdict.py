"""Three-valued check results shared by every module."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    VERIFIED = "verified"
    PARTIAL = "partial"  # verified on everything inside a window; rest skipped
    REFUTED = "refuted"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {"verified": 0, "partial": 0, "refuted": 1, "unknown": 2}[self.value]


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Any = None
    skipped: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (Status.VERIFIED, Status.PARTIAL)

    @classmethod
    def verified(cls, witness=None, **detail) -> "Verdict":
        return cls(Status.VERIFIED, witness, 0, detail)

    @classmethod
    def partial(cls, skipped: int, witness=None, **detail) -> "Verdict":
        if skipped == 0:
            return cls(Status.VERIFIED, witness, 0, detail)
        return cls(Status.PARTIAL, witness, skipped, detail)

    @classmethod
    def refuted(cls, witness, **detail) -> "Verdict":
        return cls(Status.REFUTED, witness, 0, detail)

    @classmethod
    def unknown(cls, **detail) -> "Verdict":
        return cls(Status.UNKNOWN, None, 0, detail)
