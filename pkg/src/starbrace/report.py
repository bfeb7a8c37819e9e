from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .tables import Witness, plain


@dataclass
class Check:
    """One named sub-check of a verifier.

    ``asserted=False`` marks observations that are reported but never fail a run.
    """

    name: str
    passed: bool
    witness: Optional[Witness] = None
    asserted: bool = True
    detail: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def of(cls, name: str, result, asserted: bool = True, **detail) -> "Check":
        if isinstance(result, Witness):
            return cls(name, False, result, asserted, detail)
        return cls(name, bool(result), None, asserted, detail)

    @property
    def failed(self) -> bool:
        return self.asserted and not self.passed

    def as_dict(self) -> dict:
        out = {"check": self.name, "pass": bool(self.passed), "asserted": self.asserted}
        if self.witness is not None:
            out["witness"] = self.witness.as_dict()
        if self.detail:
            out["detail"] = plain(self.detail)
        return out


def all_passed(checks) -> bool:
    return not any(c.failed for c in checks)


@dataclass
class RunReport:
    """Result of one command: every check in order, plus optional wall times."""

    command: str
    structure_digest: Optional[str]
    checks: list[Check] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    extra: list[dict] = field(default_factory=list)

    def add(self, checks, group: str = "", seconds: Optional[float] = None) -> None:
        checks = list(checks)
        self.checks.extend(checks)
        if seconds is not None and group:
            self.timing[group] = self.timing.get(group, 0.0) + seconds

    @property
    def passed(self) -> bool:
        return all_passed(self.checks)

    def json_lines(self, with_timing: bool = False) -> list[str]:
        head = {"command": self.command, "structure_digest": self.structure_digest}
        out = [json.dumps({"type": "check", **head, **c.as_dict()}, sort_keys=True) for c in self.checks]
        out += [json.dumps({"type": "record", **head, **e}, sort_keys=True) for e in self.extra]
        summary = {"type": "summary", **head, "checks": len(self.checks),
                   "failed": sum(c.failed for c in self.checks),
                   "status": "pass" if self.passed else "fail"}
        if with_timing:
            summary["timing"] = {k: round(v, 6) for k, v in sorted(self.timing.items())}
        out.append(json.dumps(summary, sort_keys=True))
        return out

    def summary_text(self) -> str:
        failed = [c for c in self.checks if c.failed]
        lines = [f"{self.command}: {len(self.checks)} checks, {len(failed)} failed -> "
                 f"{'PASS' if not failed else 'FAIL'}"]
        for c in failed[:10]:
            w = f" witness {c.witness.inputs}" if c.witness is not None else ""
            lines.append(f"  FAILED {c.name}{w}")
        if len(failed) > 10:
            lines.append(f"  ... and {len(failed) - 10} more")
        return "\n".join(lines)
