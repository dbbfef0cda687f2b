"""Verification reports: per-check records, summary counts, JSON round-trip."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from ..symexpr import SamplePoint, Verdict

STATUSES = ("pass", "fail", "degenerate", "info")
SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    id: str
    reference: str
    status: str
    witness: dict[str, float] | None = None
    detail: str = ""
    wall_time: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @classmethod
    def from_verdict(cls, id: str, reference: str, verdict: Verdict, detail: str = "") -> CheckRecord:
        if verdict.zero:
            return cls(id, reference, "pass", None, detail)
        witness = verdict.witness.as_dict() if isinstance(verdict.witness, SamplePoint) else None
        if verdict.value is not None and not detail:
            detail = f"residual {verdict.value!r} at witness"
        return cls(id, reference, "fail", witness, detail)


@dataclass
class Report:
    scenario: str
    config: dict = field(default_factory=dict)
    convention_constant: str | None = None
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def summary(self) -> dict[str, int]:
        counts = Counter(r.status for r in self.records)
        out = {s: counts.get(s, 0) for s in STATUSES}
        out["total"] = len(self.records)
        return out

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    @property
    def exit_code(self) -> int:
        counts = self.summary()
        if counts["degenerate"]:
            return 2
        if counts["fail"]:
            return 1
        return 0

    def to_dict(self, timings: bool = False) -> dict:
        records = []
        for r in self.records:
            d = asdict(r)
            if not timings:
                d.pop("wall_time")
            records.append(d)
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario,
            "config": dict(self.config),
            "convention_constant": self.convention_constant,
            "records": records,
            "summary": self.summary(),
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        records = [CheckRecord(**r) for r in data["records"]]
        rep = cls(data["scenario"], dict(data["config"]), data["convention_constant"], records)
        if rep.summary() != data["summary"]:
            raise ValueError("report summary does not match its records")
        return rep

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"scenario: {self.scenario}"]
        if self.convention_constant is not None:
            lines.append(f"wedge-square / density constant: {self.convention_constant}")
        width = max((len(r.id) for r in self.records), default=0)
        for r in self.records:
            line = f"  [{r.status.upper():>10}] {r.id:<{width}}  {r.reference}"
            if r.detail:
                line += f" ({r.detail})"
            lines.append(line)
            if r.witness:
                pt = ", ".join(f"{k}={v:.6g}" for k, v in r.witness.items())
                lines.append(f"               witness: {pt}")
        s = self.summary()
        lines.append(
            f"summary: {s['pass']} pass, {s['fail']} fail, {s['degenerate']} degenerate, {s['info']} info"
        )
        return "\n".join(lines) + "\n"
