"""Early-recognition metrics over scored, labelled lists.

Scores are "higher is better".  logAUC treats tied scores as one ROC
vertex group; the rank-based metrics (BEDROC, EF, DCG, CG) need a strict
order, so ties are broken by a seeded shuffle (see :func:`rank_labels`).
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

LOG_FPR_LO = 0.001
LOG_FPR_HI = 0.1


class MetricError(ValueError):
    pass


def _arrays(scores, labels) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels)
    if s.shape != y.shape or s.ndim != 1:
        raise MetricError("scores and labels must be 1-D and of equal length")
    if len(s) == 0:
        raise MetricError("empty list")
    if np.isnan(s).any():
        raise MetricError("NaN score")
    if not np.isin(y, (0, 1)).all():
        raise MetricError("labels must be 0 or 1")
    return s, y.astype(np.int64)


def roc_vertices(scores, labels) -> tuple[np.ndarray, np.ndarray]:
    """ROC points (FPR, TPR) from (0, 0), one vertex per group of tied scores."""
    s, y = _arrays(scores, labels)
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise MetricError("ROC needs at least one active and one inactive")
    order = np.argsort(-s, kind="stable")
    s, y = s[order], y[order]
    last = np.r_[s[1:] != s[:-1], True]  # final position of each tie group
    tp = np.cumsum(y)[last]
    fp = np.cumsum(1 - y)[last]
    fpr = np.r_[0.0, fp / n_neg]
    tpr = np.r_[0.0, tp / n_pos]
    return fpr, tpr


def log_auc(scores, labels, fpr_lo: float = LOG_FPR_LO, fpr_hi: float = LOG_FPR_HI) -> float:
    """Area under TPR over log10(FPR) in [fpr_lo, fpr_hi], normalized to [0, 1].

    The ROC is linear in FPR between vertices (tied scores give diagonal
    segments, and the first segment starts at the origin); each piece is
    integrated exactly against log10(FPR).
    """
    if not 0 < fpr_lo < fpr_hi <= 1:
        raise MetricError("need 0 < fpr_lo < fpr_hi <= 1")
    x, y = roc_vertices(scores, labels)
    x1, x2, y1, y2 = x[:-1], x[1:], y[:-1], y[1:]
    lo = np.maximum(x1, fpr_lo)
    hi = np.minimum(x2, fpr_hi)
    keep = (hi > lo) & (x2 > x1)
    if not keep.any():
        return 0.0
    x1, x2, y1, y2, lo, hi = x1[keep], x2[keep], y1[keep], y2[keep], lo[keep], hi[keep]
    slope = (y2 - y1) / (x2 - x1)
    icpt = y1 - slope * x1
    area = icpt * (np.log10(hi) - np.log10(lo)) + slope * (hi - lo) / math.log(10.0)
    return float(area.sum() / (math.log10(fpr_hi) - math.log10(fpr_lo)))


def rank_labels(scores, labels, seed: int | None = 0) -> np.ndarray:
    """Labels in descending score order; ties ordered by a seeded shuffle.

    ``seed=None`` keeps tied items in input order.
    """
    s, y = _arrays(scores, labels)
    if seed is None:
        perm = np.arange(len(s))
    else:
        perm = np.random.default_rng(seed).permutation(len(s))
    order = perm[np.argsort(-s[perm], kind="stable")]
    return y[order]


def bedroc_from_ranks(ranks: Sequence[int], n_total: int, alpha: float = 20.0) -> float:
    """BEDROC from 1-based ranks of the actives among ``n_total`` items."""
    r = np.asarray(ranks, dtype=float)
    n, big_n = len(r), int(n_total)
    if n == 0 or n >= big_n:
        raise MetricError("BEDROC needs 1 <= actives < total")
    ra = n / big_n
    x = r / big_n
    rie = np.exp(-alpha * x).sum() / n / ((1.0 / big_n) * (-math.expm1(-alpha)) / math.expm1(alpha / big_n))
    rie_max = -math.expm1(-alpha * ra) / (ra * -math.expm1(-alpha))
    rie_min = -math.expm1(alpha * ra) / (ra * -math.expm1(alpha))
    return float((rie - rie_min) / (rie_max - rie_min))


def bedroc(scores, labels, alpha: float = 20.0, seed: int | None = 0) -> float:
    ranked = rank_labels(scores, labels, seed)
    ranks = np.flatnonzero(ranked) + 1
    return bedroc_from_ranks(ranks, len(ranked), alpha)


def ef_k(scores, labels, k: int = 100, seed: int | None = 0) -> float:
    ranked = rank_labels(scores, labels, seed)
    big_n, n = len(ranked), int(ranked.sum())
    if not 1 <= k <= big_n:
        raise MetricError(f"EF_k needs 1 <= k <= N (k={k}, N={big_n})")
    if n == 0:
        raise MetricError("EF_k needs at least one active")
    return float((ranked[:k].sum() / k) / (n / big_n))


def cg_k(scores, labels, k: int = 100, seed: int | None = 0) -> float:
    ranked = rank_labels(scores, labels, seed)
    return float(ranked[:k].sum())


def dcg_k(scores, labels, k: int = 100, seed: int | None = 0) -> float:
    ranked = rank_labels(scores, labels, seed)[:k]
    # in-order scalar sum, so the value does not depend on numpy's summation tree
    total = 0.0
    for pos in np.flatnonzero(ranked) + 1:
        total += 1.0 / math.log2(pos + 1)
    return total


def tie_averaged(
    metric: Callable[..., float], scores, labels, n_shuffles: int = 10, seed: int = 0, **kwargs
) -> tuple[float, float]:
    """Mean and standard deviation of a rank-based metric over tie-breaking shuffles."""
    s, _ = _arrays(scores, labels)
    if len(np.unique(s)) == len(s):
        v = metric(scores, labels, seed=None, **kwargs)
        return v, 0.0
    ss = np.random.SeedSequence(seed).generate_state(n_shuffles)
    vals = np.array([metric(scores, labels, seed=int(x), **kwargs) for x in ss])
    return float(vals.mean()), float(vals.std())
