"""Step-by-step curation accounting."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class StepCounts:
    step: str
    input: int
    removed: int = 0
    flagged: int = 0
    modified: int = 0
    output: int = 0
    skipped: bool = False


@dataclass
class Flag:
    cid: int
    step: str
    reason: str


@dataclass
class CurationReport:
    steps: list[StepCounts] = field(default_factory=list)
    removals: list[Flag] = field(default_factory=list)
    flags: list[Flag] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def start(self, step: str, n_input: int, skipped: bool = False) -> StepCounts:
        sc = StepCounts(step, n_input, output=n_input, skipped=skipped)
        self.steps.append(sc)
        return sc

    def remove(self, sc: StepCounts, cid: int, reason: str) -> None:
        self.removals.append(Flag(cid, sc.step, reason))
        sc.removed += 1
        sc.output -= 1

    def flag(self, sc: StepCounts, cid: int, reason: str) -> None:
        self.flags.append(Flag(cid, sc.step, reason))
        sc.flagged += 1

    @property
    def n_input(self) -> int:
        return self.steps[0].input if self.steps else 0

    @property
    def n_output(self) -> int:
        return self.steps[-1].output if self.steps else 0

    def removed_by_step(self) -> dict[str, int]:
        return {s.step: s.removed for s in self.steps}

    def check_telescoping(self) -> None:
        for a, b in zip(self.steps, self.steps[1:]):
            if a.output != b.input:
                raise AssertionError(f"step {b.step} input {b.input} != {a.step} output {a.output}")
        if sum(s.removed for s in self.steps) + self.n_output != self.n_input:
            raise AssertionError("removed + output != input")

    def to_json(self) -> str:
        data = {
            "steps": [asdict(s) for s in self.steps],
            "removals": [asdict(r) for r in self.removals],
            "expert_review": [asdict(f) for f in self.flags],
            "meta": self.meta,
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def summary(self) -> str:
        head = f"{'step':<20}{'input':>9}{'removed':>9}{'flagged':>9}{'modified':>9}{'output':>9}"
        rows = [head, "-" * len(head)]
        for s in self.steps:
            name = s.step + (" (skipped)" if s.skipped else "")
            rows.append(f"{name:<20}{s.input:>9}{s.removed:>9}{s.flagged:>9}{s.modified:>9}{s.output:>9}")
        for k, v in self.meta.items():
            rows.append(f"{k}: {v}")
        return "\n".join(rows) + "\n"
