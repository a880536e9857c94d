"""Machine-readable verification reports and run configuration.

Every suite emits a list of VerificationReport values, one per claim checked.
Reports are plain data: serializable as JSON lines, deterministic once the
wall_time field is stripped, and ordered by claim id when merged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if hasattr(value, "serialize"):
        return value.serialize()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float, str)):
        return value
    return str(value)


@dataclass
class VerificationReport:
    """Outcome of one checked claim, with a witness payload."""

    claim: str
    paper_ref: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    def to_json(self, strip_time: bool = False) -> str:
        data = {
            "claim": self.claim,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "witness": _jsonable(self.witness),
        }
        if not strip_time:
            data["wall_time"] = round(self.wall_time, 6)
        return json.dumps(data, sort_keys=True)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIPPED)


def check(claim: str, paper_ref: str, condition: bool, **witness: Any) -> VerificationReport:
    """Build a pass/fail report; failing reports keep the witness payload."""
    return VerificationReport(
        claim=claim,
        paper_ref=paper_ref,
        status=PASS if condition else FAIL,
        witness=witness,
    )


def skipped(claim: str, paper_ref: str, reason: str) -> VerificationReport:
    return VerificationReport(claim=claim, paper_ref=paper_ref, status=SKIPPED, witness={"reason": reason})


@dataclass
class RunConfig:
    """Suite selection plus parameters and resource caps for one CLI run."""

    suites: tuple[str, ...] = ()
    genus: int | None = None
    degree: int | None = None
    roots: tuple[Fraction, ...] | None = None
    cap_elements: int = 1 << 21
    max_commutator_exponent: int = 6
    precision_bits: int = 64
    quick: bool = False
    out_path: str | None = None

    def __post_init__(self) -> None:
        if self.cap_elements <= 0:
            raise ValueError("cap_elements must be positive")
        if self.precision_bits < 16:
            raise ValueError("precision_bits must be at least 16")
        if self.roots is not None:
            if len(set(self.roots)) != len(self.roots):
                raise ValueError("root fixtures must be pairwise distinct")


def summarize(reports: list[VerificationReport]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        out[r.status] += 1
    return out
