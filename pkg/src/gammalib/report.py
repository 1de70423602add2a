"""Check records, reports, and the JSON report schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .verdict import Verdict

VERDICTS = ("pass", "fail", "error", "skipped")

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["checks", "summary"],
    "properties": {
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "target", "verdict", "witness"],
                "properties": {
                    "id": {"type": "string"},
                    "target": {"type": "string"},
                    "verdict": {"enum": list(VERDICTS)},
                    "law": {"type": ["string", "null"]},
                    "witness": {},
                    "detail": {"type": "string"},
                    "result": {},
                    "timing_ms": {"type": "number"},
                },
                "allOf": [
                    {
                        "if": {"properties": {"verdict": {"const": "fail"}}},
                        "then": {"properties": {"witness": {"not": {"type": "null"}}}},
                    }
                ],
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", *VERDICTS],
            "properties": {k: {"type": "integer", "minimum": 0} for k in ("total", *VERDICTS)},
        },
    },
}


def jsonable(x: Any) -> Any:
    """Tuples become lists, verdicts become strings, mappings get string keys."""
    if isinstance(x, Verdict):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x)]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if hasattr(x, "item"):
        return x.item()
    return x


@dataclass
class Record:
    id: str
    target: str
    verdict: str
    law: str | None = None
    witness: Any = None
    detail: str = ""
    result: Any = None
    timing_ms: float | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @classmethod
    def from_verdict(cls, id: str, target: str, v: Verdict, **kw) -> Record:
        if v:
            return cls(id, target, "pass", detail=v.detail, **kw)
        witness = v.witness if v.witness is not None else [v.law]
        return cls(id, target, "fail", law=v.law, witness=witness, detail=v.detail, **kw)

    def to_dict(self, timing: bool = True) -> dict:
        d = {"id": self.id, "target": self.target, "verdict": self.verdict, "witness": jsonable(self.witness)}
        if self.law is not None:
            d["law"] = self.law
        if self.detail:
            d["detail"] = self.detail
        if self.result is not None:
            d["result"] = jsonable(self.result)
        if timing and self.timing_ms is not None:
            d["timing_ms"] = round(self.timing_ms, 3)
        return d


@dataclass
class Report:
    records: list = field(default_factory=list)

    def add(self, record: Record) -> None:
        self.records.append(record)

    def sorted(self) -> list:
        return sorted(self.records, key=lambda r: (r.id, r.target))

    def summary(self) -> dict:
        out = {"total": len(self.records)}
        for v in VERDICTS:
            out[v] = sum(r.verdict == v for r in self.records)
        return out

    @property
    def exit_code(self) -> int:
        s = self.summary()
        return 1 if s["fail"] or s["error"] else 0

    def to_dict(self, timing: bool = True) -> dict:
        return {"checks": [r.to_dict(timing) for r in self.sorted()], "summary": self.summary()}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        for r in self.sorted():
            line = f"{r.verdict.upper():7} {r.id} {r.target}"
            if r.verdict != "pass" and r.law:
                line += f" [{r.law}]"
            if r.witness is not None:
                line += f" witness={json.dumps(jsonable(r.witness))}"
            if r.detail:
                line += f" ({r.detail})"
            if r.result is not None:
                line += f" -> {json.dumps(jsonable(r.result))}"
            lines.append(line)
        s = self.summary()
        lines.append(" ".join(f"{k}={s[k]}" for k in ("total", *VERDICTS)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        recs = [
            Record(
                c["id"], c["target"], c["verdict"], c.get("law"), c.get("witness"), c.get("detail", ""), c.get("result"), c.get("timing_ms")
            )
            for c in d["checks"]
        ]
        return cls(recs)
