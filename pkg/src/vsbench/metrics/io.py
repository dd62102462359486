"""Prediction files (``cid<TAB>score``) and label joining."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import numpy as np


class MissingCidError(KeyError):
    def __init__(self, missing: list[str], extra: list[str] | None = None):
        self.missing = missing
        self.extra = extra or []
        msg = f"{len(missing)} cid(s) without scores: {', '.join(missing[:20])}"
        if len(missing) > 20:
            msg += ", ..."
        super().__init__(msg)

    def __str__(self) -> str:
        return self.args[0]


def read_predictions(path: str | Path) -> dict[str, float]:
    out: dict[str, float] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'cid<TAB>score'")
            cid, score = parts[0].strip(), parts[1].strip()
            if lineno == 1 and cid == "cid":
                continue
            try:
                out[cid] = float(score)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad score {score!r}") from None
            if out[cid] != out[cid]:
                raise ValueError(f"{path}:{lineno}: NaN score")
    return out


def write_predictions(path: str | Path, scores: Mapping[str, float]) -> None:
    with open(path, "w") as fh:
        for cid, s in scores.items():
            fh.write(f"{cid}\t{float(s)!r}\n")


def join_labels(
    predictions: Mapping[str, float], labels: Mapping[str, int], cids=None
) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Scores and labels for ``cids`` (default: every labelled cid).

    Raises MissingCidError listing the cids that have no prediction.
    """
    wanted = list(labels) if cids is None else [str(c) for c in cids]
    missing = [c for c in wanted if c not in predictions]
    if missing:
        raise MissingCidError(missing)
    s = np.array([predictions[c] for c in wanted], dtype=float)
    y = np.array([labels[c] for c in wanted], dtype=np.int64)
    return wanted, s, y
