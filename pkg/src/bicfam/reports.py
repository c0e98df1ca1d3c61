"""Check reports: the one result type every property suite returns.

JSON serialization is canonical (sorted keys, no whitespace) and
excludes the wall-time measurement, so a fixed seed yields
byte-identical reports across runs; wall time appears only in the text
rendering.  Counterexample lists are capped in the serialized form with
the full count preserved in ``counts``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

SCHEMA_VERSION = 1

MAX_LISTED_COUNTEREXAMPLES = 20


@dataclass(frozen=True)
class CheckReport:
    suite: str
    context: str
    params: Dict[str, object]
    status: str  # "pass" | "fail"
    counterexamples: Tuple[Dict[str, str], ...]
    counts: Dict[str, object]
    wall_ms: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError("status must be pass or fail")
        if (self.status == "fail") != bool(self.counterexamples):
            raise ValueError("status=fail exactly when counterexamples exist")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "context": self.context,
            "params": dict(self.params),
            "status": self.status,
            "counterexamples": [dict(c) for c in self.counterexamples],
            "counts": dict(self.counts),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_dict(data: dict) -> "CheckReport":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema: {data.get('schema')!r}")
        return CheckReport(
            suite=data["suite"],
            context=data["context"],
            params=dict(data["params"]),
            status=data["status"],
            counterexamples=tuple(dict(c) for c in data["counterexamples"]),
            counts=dict(data["counts"]),
            wall_ms=None,
        )

    @staticmethod
    def from_json(text: str) -> "CheckReport":
        return CheckReport.from_dict(json.loads(text))

    def with_wall(self, wall_ms: float) -> "CheckReport":
        return replace(self, wall_ms=wall_ms)

    def render_text(self) -> str:
        lines = [f"suite {self.suite} [{self.context}]: {self.status.upper()}"]
        for key in sorted(self.params):
            lines.append(f"  param {key} = {self.params[key]}")
        for key in sorted(self.counts):
            lines.append(f"  {key}: {self.counts[key]}")
        for cex in self.counterexamples:
            inner = ", ".join(f"{k}={cex[k]}" for k in sorted(cex))
            lines.append(f"  counterexample: {inner}")
        if self.wall_ms is not None:
            lines.append(f"  wall: {self.wall_ms:.1f} ms")
        return "\n".join(lines)


def build_report(suite, context, params, counterexamples, counts, wall_ms=None) -> CheckReport:
    """Normalize raw suite output into a CheckReport; caps the listed
    counterexamples, recording the true total in counts."""
    cexs = tuple({k: str(v) for k, v in c.items()} for c in counterexamples)
    counts = dict(counts)
    counts["counterexamples_total"] = len(cexs)
    return CheckReport(
        suite=suite,
        context=context,
        params={k: params[k] for k in sorted(params)},
        status="pass" if not cexs else "fail",
        counterexamples=cexs[:MAX_LISTED_COUNTEREXAMPLES],
        counts=counts,
        wall_ms=wall_ms,
    )
