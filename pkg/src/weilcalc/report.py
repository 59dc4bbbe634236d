"""The result type shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass
class VerificationReport:
    """Outcome of an exact check; ``details`` holds one entry per sub-check."""

    passed: bool
    expected_dim: int | None = None
    actual_dim: int | None = None
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed
