"""Pass/fail bookkeeping shared by the topology checks and the verification suites."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class AxiomResult:
    name: str
    passed: int = 0
    failed: int = 0
    uncertain: int = 0
    counterexample: dict[str, Any] | None = None
    notes: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.uncertain

    def record(self, verdict: bool | None, trace: dict[str, Any] | None = None) -> None:
        """True/False/None for pass/fail/uncertain; the first non-pass keeps its trace."""
        if verdict is True:
            self.passed += 1
            return
        if verdict is False:
            self.failed += 1
        else:
            self.uncertain += 1
        if self.counterexample is None and trace is not None:
            self.counterexample = trace

    def note(self, key: str) -> None:
        self.notes[key] = self.notes.get(key, 0) + 1

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "pass": self.passed,
            "fail": self.failed,
            "uncertain": self.uncertain,
        }
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.notes:
            d["notes"] = dict(sorted(self.notes.items()))
        return d


@dataclass
class Report:
    suite: str
    seed: int | None
    trials: int
    axioms: list[AxiomResult] = field(default_factory=list)
    elapsed_ms: float | None = None

    def axiom(self, name: str) -> AxiomResult:
        for a in self.axioms:
            if a.name == name:
                return a
        a = AxiomResult(name)
        self.axioms.append(a)
        return a

    @property
    def failures(self) -> int:
        return sum(a.failed for a in self.axioms)

    @property
    def uncertain(self) -> int:
        return sum(a.uncertain for a in self.axioms)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.uncertain == 0

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "axioms": [a.to_dict() for a in self.axioms],
        }
        d["elapsed_ms"] = round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"suite {self.suite}  seed={self.seed}  trials={self.trials}"]
        for a in self.axioms:
            extra = "".join(f"  {k}={v}" for k, v in sorted(a.notes.items()))
            lines.append(f"  {a.name:<32} pass={a.passed} fail={a.failed} uncertain={a.uncertain}{extra}")
            if a.counterexample is not None:
                lines.append(f"    counterexample: {json.dumps(a.counterexample, sort_keys=True)}")
        if timing and self.elapsed_ms is not None:
            lines.append(f"  elapsed {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)
