"""Split plans and their CSV + JSON sidecar files."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

SPLIT_NAMES = ("train", "valid", "test")


class SplitError(ValueError):
    pass


@dataclass
class SplitPlan:
    scheme: str
    assignments: dict[str, str]  # cid -> train / valid / test
    seed: int
    fold: int | None = None
    k: int | None = None
    meta: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def members(self, split: str) -> list[str]:
        return [c for c, s in self.assignments.items() if s == split]

    def counts(self) -> dict[str, int]:
        return {s: sum(1 for v in self.assignments.values() if v == s) for s in SPLIT_NAMES}


def sidecar_path(path: str | Path) -> Path:
    p = Path(path)
    return p.with_name(p.name + ".meta.json")


def write_split_file(path: str | Path, plans: list[SplitPlan]) -> None:
    """One CSV for a scaffold plan (split names) or a CV plan set (test fold index)."""
    if not plans:
        raise SplitError("no plans to write")
    scheme = plans[0].scheme
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["cid", "fold_or_split"])
        if scheme == "adapted_cv":
            fold_of = {}
            for p in plans:
                for c in p.members("test"):
                    fold_of[c] = p.fold
            for c in plans[0].assignments:
                w.writerow([c, fold_of[c]])
        else:
            for c, s in plans[0].assignments.items():
                w.writerow([c, s])
    meta = {
        "scheme": scheme,
        "seed": plans[0].seed,
        "k": plans[0].k,
        "plans": [{"fold": p.fold, "counts": p.counts(), **p.meta} for p in plans],
        "warnings": [w for p in plans for w in p.warnings],
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2) + "\n")


def read_split_file(path: str | Path) -> list[SplitPlan]:
    meta = json.loads(sidecar_path(path).read_text())
    rows = []
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header != ["cid", "fold_or_split"]:
            raise SplitError(f"{path}: expected header cid,fold_or_split")
        rows = [tuple(row) for row in r if row]
    seed = meta["seed"]
    if meta["scheme"] == "adapted_cv":
        k = int(meta["k"])
        folds = {c: int(f) for c, f in rows}
        return [cv_plan_from_folds(folds, i, k, seed) for i in range(k)]
    return [SplitPlan(meta["scheme"], dict(rows), seed)]


def cv_plan_from_folds(folds: dict[str, int], i: int, k: int, seed: int) -> SplitPlan:
    valid = (i - 1) % k
    assign = {c: "test" if f == i else "valid" if f == valid else "train" for c, f in folds.items()}
    return SplitPlan("adapted_cv", assign, seed, fold=i, k=k)
