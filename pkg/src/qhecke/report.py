"""Machine-readable check results and verification reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class CheckResult:
    id: str
    description: str
    status: str
    conclusive_range: str = ""
    max_numeric_error: float | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        d = {
            "id": self.id,
            "description": self.description,
            "status": self.status,
            "conclusive_range": self.conclusive_range,
            "detail": self.detail,
        }
        if self.max_numeric_error is not None:
            d["max_numeric_error"] = self.max_numeric_error
        return d


@dataclass
class Report:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    timestamp: str = ""

    def sort(self) -> None:
        self.checks.sort(key=lambda c: c.id)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "timestamp": self.timestamp,
            "counts": {
                "pass": sum(1 for c in self.checks if c.status == PASS),
                "fail": sum(1 for c in self.checks if c.status == FAIL),
                "inconclusive": sum(1 for c in self.checks if c.status == INCONCLUSIVE),
            },
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def _range_str(bound: Fraction | None, var: str = "q") -> str:
    return f"{var} exponents < {bound}" if bound is not None else f"all {var} exponents"


def from_match(check_id: str, description: str, match, through) -> CheckResult:
    """CheckResult from a SeriesMatch, requiring conclusiveness through `through`."""
    rng = _range_str(match.bound)
    if not match.equal:
        return CheckResult(
            check_id,
            description,
            FAIL,
            rng,
            detail=f"first mismatch at q^{match.first_mismatch}: "
            f"{match.lhs} != {match.rhs}",
        )
    if not match.through(through):
        return CheckResult(
            check_id,
            description,
            INCONCLUSIVE,
            rng,
            detail=f"needed conclusiveness through q^{through}",
        )
    return CheckResult(check_id, description, PASS, rng)


def from_bi_match(check_id, description, match, p_through, q_through=None) -> CheckResult:
    rng = _range_str(match.p_bound, "p")
    if match.q_bound is not None:
        rng += f", {_range_str(match.q_bound)}"
    if not match.equal:
        d = match.detail
        extra = (
            f" (q^{d.first_mismatch}: {d.lhs} != {d.rhs})" if d is not None else ""
        )
        return CheckResult(
            check_id,
            description,
            FAIL,
            rng,
            detail=f"mismatch at p^{match.p_mismatch}{extra}",
        )
    if not match.through(p_through, q_through):
        return CheckResult(
            check_id,
            description,
            INCONCLUSIVE,
            rng,
            detail=f"needed p through {p_through}"
            + (f", q through {q_through}" if q_through is not None else ""),
        )
    return CheckResult(check_id, description, PASS, rng)


def from_numeric(check_id, description, error: float, tol: float, rng: str = "") -> CheckResult:
    status = PASS if error <= tol else FAIL
    return CheckResult(
        check_id,
        description,
        status,
        rng,
        max_numeric_error=error,
        detail="" if status == PASS else f"error {error:.3e} exceeds tolerance {tol:.1e}",
    )


def from_bool(check_id, description, ok: bool, rng: str = "", detail: str = "") -> CheckResult:
    return CheckResult(check_id, description, PASS if ok else FAIL, rng, detail=detail if not ok else "")
