"""Report models shared by the verify suites and the CLI.

Reports are the only thing written to stdout; the JSON form validates against
xlaguerre/data/report.schema.json.
"""

from __future__ import annotations

import json
from enum import Enum
from importlib import resources
from typing import Any

from pydantic import BaseModel, Field, computed_field


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class CheckRecord(BaseModel):
    name: str
    status: CheckStatus
    details: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_bool(cls, name: str, ok: bool, **details: Any) -> CheckRecord:
        return cls(name=name, status=CheckStatus.PASS if ok else CheckStatus.FAIL, details=details)

    @classmethod
    def skipped(cls, name: str, reason: str) -> CheckRecord:
        return cls(name=name, status=CheckStatus.SKIP, details={"reason": reason})


class Report(BaseModel):
    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    records: list[CheckRecord] = Field(default_factory=list)
    timing: dict[str, float] | None = None

    @computed_field
    @property
    def passed(self) -> bool:
        return all(r.status is not CheckStatus.FAIL for r in self.records)

    def sorted(self) -> Report:
        """Records ordered by name, independent of completion order."""
        return self.model_copy(update={"records": sorted(self.records, key=lambda r: r.name)})

    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in CheckStatus}
        for r in self.records:
            out[r.status.value] += 1
        return out

    def exit_code(self) -> int:
        return 0 if self.passed else 1


def shipped_schema() -> dict[str, Any]:
    text = resources.files("xlaguerre").joinpath("data/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
