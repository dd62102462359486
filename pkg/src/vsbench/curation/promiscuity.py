"""Frequency of hits (FoH) with target-similarity down-weighting."""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

FOH_THRESHOLD = 0.26
MIN_ASSAY_SIZE = 10_000


class PromiscuityDataError(ValueError):
    pass


@dataclass(frozen=True)
class AssayResult:
    aid: int
    active: bool
    size: int  # compounds tested in the assay


@dataclass
class PromiscuityTable:
    results: dict[int, list[AssayResult]] = field(default_factory=dict)  # cid -> results
    target_of: dict[int, str] = field(default_factory=dict)  # aid -> target id
    identity: dict[frozenset, float] = field(default_factory=dict)  # {t1, t2} -> %SI

    def percent_identity(self, t1: str, t2: str) -> float:
        return self.identity.get(frozenset((t1, t2)), 0.0)

    @classmethod
    def read(cls, results_csv, targets_csv=None, identity_csv=None) -> "PromiscuityTable":
        """Load ``cid,aid,outcome,assay_size``, ``aid,target`` and ``target_a,target_b,percent_identity``."""
        results: dict[int, list[AssayResult]] = defaultdict(list)
        for row in _rows(results_csv, ("cid", "aid", "outcome", "assay_size")):
            outcome = row["outcome"].strip().lower()
            if outcome not in ("active", "inactive"):
                continue
            results[int(row["cid"])].append(AssayResult(int(row["aid"]), outcome == "active", int(row["assay_size"])))
        targets = {}
        if targets_csv is not None:
            targets = {int(r["aid"]): r["target"].strip() for r in _rows(targets_csv, ("aid", "target"))}
        identity = {}
        if identity_csv is not None:
            for r in _rows(identity_csv, ("target_a", "target_b", "percent_identity")):
                identity[frozenset((r["target_a"].strip(), r["target_b"].strip()))] = float(r["percent_identity"])
        return cls(dict(results), targets, identity)


def _rows(path, header):
    with open(Path(path), newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != header:
            raise PromiscuityDataError(f"{path}: expected header {','.join(header)}")
        yield from reader


def assay_weight(table: PromiscuityTable, aid: int, other_targets: set[str]) -> float:
    """w = 1 - %SI/100, %SI the highest identity to any other target the compound met."""
    target = table.target_of.get(aid, f"aid:{aid}")
    si = 0.0
    for t in other_targets:
        if t != target:
            si = max(si, table.percent_identity(target, t))
    if not 0.0 <= si <= 100.0:
        raise PromiscuityDataError(f"percent identity {si} for target {target} is outside [0, 100]")
    return 1.0 - si / 100.0


def foh(cid: int, table: PromiscuityTable, min_assay_size: int = MIN_ASSAY_SIZE) -> float | None:
    """Weighted active fraction over assays with more than ``min_assay_size`` compounds.

    None when the compound has no eligible assay (or all weights vanish).
    """
    eligible = [r for r in table.results.get(cid, ()) if r.size > min_assay_size]
    if not eligible:
        return None
    targets = {table.target_of.get(r.aid, f"aid:{r.aid}") for r in eligible}
    w_all = w_act = 0.0
    for r in eligible:
        w = assay_weight(table, r.aid, targets)
        w_all += w
        if r.active:
            w_act += w
    if w_all == 0.0:
        return None
    return w_act / w_all
