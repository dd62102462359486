"""Fold-wise evaluation of external prediction files."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ..metrics.core import bedroc, dcg_k, ef_k, log_auc, tie_averaged
from ..metrics.io import MissingCidError, read_predictions
from ..splits.plan import SplitPlan

METRICS = ("logauc", "bedroc", "ef100", "dcg100")
TOP_K = 100


@dataclass
class FoldResult:
    fold: int | None
    n: int
    n_actives: int
    values: dict[str, float]
    tie_std: dict[str, float] = field(default_factory=dict)  # spread over tie-breaking shuffles
    k: int = TOP_K  # effective top-k (clamped to the fold size)
    extra_cids: int = 0  # scored cids outside the test fold


@dataclass
class MetricReport:
    folds: list[FoldResult]
    aggregate: dict[str, dict[str, float | None]]  # metric -> {mean, se}
    version: str = ""
    split: str = ""

    def to_json(self) -> str:
        data = {
            "version": self.version,
            "split": self.split,
            "aggregate": self.aggregate,
            "folds": [asdict(f) for f in self.folds],
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MetricReport":
        d = json.loads(text)
        return cls([FoldResult(**f) for f in d["folds"]], d["aggregate"], d.get("version", ""), d.get("split", ""))

    def table(self) -> str:
        head = f"{'fold':<8}{'n':>8}{'actives':>9}" + "".join(f"{m:>12}" for m in METRICS)
        rows = [head, "-" * len(head)]
        for f in self.folds:
            label = "-" if f.fold is None else str(f.fold)
            rows.append(f"{label:<8}{f.n:>8}{f.n_actives:>9}" + "".join(f"{f.values[m]:>12.4f}" for m in METRICS))
        rows.append("-" * len(head))
        rows.append(f"{'mean':<25}" + "".join(f"{self.aggregate[m]['mean']:>12.4f}" for m in METRICS))
        se = [self.aggregate[m]["se"] for m in METRICS]
        rows.append(f"{'se':<25}" + "".join(f"{'n/a':>12}" if v is None else f"{v:>12.4f}" for v in se))
        return "\n".join(rows) + "\n"


def mean_se(values: Sequence[float]) -> tuple[float, float | None]:
    """Arithmetic mean and standard error (sample SD / sqrt(count)); SE is None for one value."""
    v = np.asarray(values, dtype=float)
    if len(v) == 0:
        raise ValueError("no values")
    if len(v) == 1:
        return float(v[0]), None
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v)))


def fold_metrics(scores, labels, seed: int = 0, n_shuffles: int = 10, k: int = TOP_K) -> FoldResult:
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels, dtype=np.int64)
    k = min(k, len(s))
    values = {"logauc": log_auc(s, y)}
    spread = {"logauc": 0.0}
    for name, fn, kw in (("bedroc", bedroc, {}), ("ef100", ef_k, {"k": k}), ("dcg100", dcg_k, {"k": k})):
        values[name], spread[name] = tie_averaged(fn, s, y, n_shuffles=n_shuffles, seed=seed, **kw)
    return FoldResult(None, len(s), int(y.sum()), values, spread, k)


def evaluate_predictions(
    predictions: Sequence[Mapping[str, float] | str | Path],
    plans: Sequence[SplitPlan],
    labels: Mapping[str, int],
    *,
    seed: int = 0,
    version: str = "",
    n_shuffles: int = 10,
) -> MetricReport:
    """Score each plan's test split with its prediction set (one per plan).

    Raises MissingCidError when a test cid has no score.
    """
    if len(predictions) != len(plans):
        raise ValueError(f"{len(predictions)} prediction set(s) for {len(plans)} plan(s)")
    folds = []
    for pred, plan in zip(predictions, plans):
        if not isinstance(pred, Mapping):
            pred = read_predictions(pred)
        test = plan.members("test")
        missing = [c for c in test if c not in pred]
        if missing:
            raise MissingCidError(missing)
        unlabeled = [c for c in test if c not in labels]
        if unlabeled:
            raise KeyError(f"{len(unlabeled)} test cid(s) lack labels: {', '.join(unlabeled[:20])}")
        s = [pred[c] for c in test]
        y = [labels[c] for c in test]
        res = fold_metrics(s, y, seed=seed, n_shuffles=n_shuffles)
        res.fold = plan.fold
        res.extra_cids = len(set(pred) - set(test))
        folds.append(res)
    aggregate = {}
    for m in METRICS:
        mean, se = mean_se([f.values[m] for f in folds])
        aggregate[m] = {"mean": mean, "se": se}
    split = plans[0].scheme + (f"(k={plans[0].k}, seed={plans[0].seed})" if plans[0].k else f"(seed={plans[0].seed})")
    return MetricReport(folds, aggregate, version, split)
