"""Machine-readable verification reports.

A report records one named claim, its pass/fail status, the numeric
payload (margins, residuals, constants), and every setting needed to
reproduce the run (truncation order, grid, seed, tolerance).  The JSON
emission is byte-deterministic for a given seed and flags, so runtime is
kept out of the serialized form and reported on the console only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict


def _plain(value: Any):
    """Coerce numpy scalars/arrays and complexes into JSON-friendly values."""
    import numpy as np

    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.complexfloating, complex)):
        value = complex(value)
        return {"re": value.real, "im": value.imag}
    return value


@dataclass
class VerificationReport:
    claim: str
    status: str  # "pass" | "fail" | "inconclusive"
    parameters: Dict[str, Any] = field(default_factory=dict)
    payload: Dict[str, Any] = field(default_factory=dict)
    settings: Dict[str, Any] = field(default_factory=dict)
    runtime_s: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "status": self.status,
            "parameters": _plain(self.parameters),
            "payload": _plain(self.payload),
            "settings": _plain(self.settings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary_line(self) -> str:
        return f"[{self.status.upper():12s}] {self.claim}  ({self.runtime_s:.2f}s)"


def reports_to_json(reports) -> str:
    return (
        json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n"
    )
