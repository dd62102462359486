"""Adapted k-fold cross-validation: validation fold directly precedes the test fold."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .plan import SplitError, SplitPlan, cv_plan_from_folds


def _pairs(records) -> list[tuple[str, int]]:
    out = []
    for r in records:
        if isinstance(r, tuple):
            cid, label = r[0], r[1]
        else:
            cid, label = r.cid, r.label
        out.append((str(cid), int(label)))
    return out


def assign_folds(records: Iterable, k: int = 5, seed: int = 0) -> dict[str, int]:
    """Label-stratified fold index per cid.

    Actives and inactives are shuffled separately and dealt round-robin,
    inactives continuing where the actives stopped, so fold sizes differ by
    at most one and per-fold active counts by at most one.
    """
    if k < 3:
        raise SplitError("adapted cross-validation needs k >= 3")
    pairs = _pairs(records)
    actives = [c for c, y in pairs if y == 1]
    inactives = [c for c, y in pairs if y != 1]
    if len(actives) < k:
        raise SplitError(f"{len(actives)} actives cannot be stratified into {k} folds")
    rng = np.random.default_rng(seed)
    folds: dict[str, int] = {}
    pos = 0
    for group in (actives, inactives):
        for idx in rng.permutation(len(group)):
            folds[group[idx]] = pos % k
            pos += 1
    return {c: folds[c] for c, _ in pairs}


def make_cv_folds(records: Iterable, k: int = 5, seed: int = 0) -> list[SplitPlan]:
    """k plans; plan i tests fold i and validates on fold (i - 1) mod k."""
    folds = assign_folds(records, k, seed)
    return [cv_plan_from_folds(folds, i, k, seed) for i in range(k)]
