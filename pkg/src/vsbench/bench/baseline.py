"""A linear logistic ranker trained on class-balanced mini-batches.

This is a sanity baseline for the benchmark loop, not a reproduction of
any published deep model.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from ..metrics.core import MetricError, log_auc
from ..splits.plan import SplitPlan

log = logging.getLogger(__name__)


class BaselineError(ValueError):
    pass


@dataclass
class BaselineConfig:
    learning_rate: float = 0.05
    batch_size: int = 128
    batches_per_epoch: int | None = None  # None: ceil(train size / batch size)
    max_epochs: int = 300
    patience: int = 30
    l2: float = 1e-4
    seed: int = 0


def oversample_batches(
    labels, batch_size: int, seed: int = 0, n_batches: int | None = None
) -> Iterator[np.ndarray]:
    """Index batches drawn with replacement, item weight 1 / (size of its class).

    Each class is then picked with equal probability.  Infinite when
    ``n_batches`` is None.
    """
    y = np.asarray(labels).astype(np.int64)
    classes, counts = np.unique(y, return_counts=True)
    if len(classes) < 2:
        raise BaselineError("oversampling needs both classes present")
    freq = dict(zip(classes.tolist(), counts.tolist()))
    p = np.array([1.0 / freq[v] for v in y.tolist()])
    p /= p.sum()
    rng = np.random.default_rng(seed)
    made = 0
    while n_batches is None or made < n_batches:
        yield rng.choice(len(y), size=batch_size, replace=True, p=p)
        made += 1


@dataclass
class Standardizer:
    mean: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, x: np.ndarray) -> "Standardizer":
        mean = x.mean(axis=0)
        std = x.std(axis=0)
        flat = std == 0
        # zero-variance columns pass through unchanged
        return cls(np.where(flat, 0.0, mean), np.where(flat, 1.0, std))

    def transform(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.scale


def logistic_loss_grad(w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray, l2: float = 0.0):
    """Mean logistic loss plus (l2/2)|w|^2, and its gradient in (w, b)."""
    z = x @ w + b
    # log(1 + e^z) - y z, computed stably
    loss = np.logaddexp(0.0, z) - y * z
    p = 0.5 * (1.0 + np.tanh(0.5 * z))  # sigmoid without overflow
    r = (p - y) / len(y)
    gw = x.T @ r + l2 * w
    gb = float(r.sum())
    return float(loss.mean() + 0.5 * l2 * (w @ w)), gw, gb


def gradient_check(x, y, l2: float = 1e-3, n_points: int = 50, seed: int = 0, eps: float = 1e-6) -> float:
    """Largest relative error between analytic and central-difference gradients."""
    rng = np.random.default_rng(seed)
    d = x.shape[1]
    worst = 0.0
    for _ in range(n_points):
        w = rng.normal(size=d)
        b = float(rng.normal())
        _, gw, gb = logistic_loss_grad(w, b, x, y, l2)
        num = np.empty(d + 1)
        for j in range(d + 1):
            wp, wm = w.copy(), w.copy()
            bp = bm = b
            if j < d:
                wp[j] += eps
                wm[j] -= eps
            else:
                bp += eps
                bm -= eps
            num[j] = (logistic_loss_grad(wp, bp, x, y, l2)[0] - logistic_loss_grad(wm, bm, x, y, l2)[0]) / (2 * eps)
        ana = np.r_[gw, gb]
        rel = np.linalg.norm(ana - num) / max(np.linalg.norm(ana) + np.linalg.norm(num), 1e-12)
        worst = max(worst, float(rel))
    return worst


def _check_finite(x: np.ndarray, names: Sequence[str] | None = None) -> None:
    bad = np.flatnonzero(~np.isfinite(x).all(axis=0))
    if len(bad):
        cols = [names[j] if names else f"column {j}" for j in bad[:10]]
        raise BaselineError(f"non-finite feature values in {', '.join(cols)}")


def _valid_score(scores: np.ndarray, y: np.ndarray) -> float:
    try:
        return log_auc(scores, y)
    except MetricError:
        return float("nan")


@dataclass
class LinearRanker:
    w: np.ndarray
    b: float
    scaler: Standardizer
    epochs: int = 0
    best_valid: float = float("nan")

    def score(self, x: np.ndarray) -> np.ndarray:
        return self.scaler.transform(np.asarray(x, dtype=float)) @ self.w + self.b


def fit_ranker(
    x_train, y_train, x_valid=None, y_valid=None, config: BaselineConfig | None = None,
    feature_names: Sequence[str] | None = None,
) -> LinearRanker:
    """Train on oversampled batches; stop when validation logAUC stalls for ``patience`` epochs."""
    cfg = config or BaselineConfig()
    x_train = np.asarray(x_train, dtype=float)
    y_train = np.asarray(y_train, dtype=float)
    _check_finite(x_train, feature_names)
    scaler = Standardizer.fit(x_train)
    xt = scaler.transform(x_train)
    xv = None
    if x_valid is not None and len(x_valid):
        xv = scaler.transform(np.asarray(x_valid, dtype=float))
        y_valid = np.asarray(y_valid, dtype=np.int64)
    d = xt.shape[1]
    w = np.zeros(d)
    b = 0.0
    per_epoch = cfg.batches_per_epoch or max(1, math.ceil(len(xt) / cfg.batch_size))
    batches = oversample_batches(y_train, cfg.batch_size, cfg.seed)
    best = (-math.inf, w.copy(), b, 0)
    stall = 0
    epoch = 0
    for epoch in range(1, cfg.max_epochs + 1):
        for _ in range(per_epoch):
            idx = next(batches)
            loss, gw, gb = logistic_loss_grad(w, b, xt[idx], y_train[idx], cfg.l2)
            if not math.isfinite(loss):
                j = int(np.argmax(np.abs(gw)))
                name = feature_names[j] if feature_names else f"column {j}"
                raise BaselineError(f"loss became NaN at epoch {epoch}; largest gradient in {name}")
            w -= cfg.learning_rate * gw
            b -= cfg.learning_rate * gb
        if xv is None:
            best = (epoch, w.copy(), b, epoch)
            continue
        v = _valid_score(xv @ w + b, y_valid)
        if v > best[0]:
            best = (v, w.copy(), b, epoch)
            stall = 0
        else:
            stall += 1
            if stall >= cfg.patience:
                break
    score, w_best, b_best, _ = best
    log.info("baseline stopped after %d epochs (best validation logAUC %.4f)", epoch, score)
    return LinearRanker(w_best, b_best, scaler, epoch, float(score) if xv is not None else float("nan"))


def train_baseline(
    cids: Sequence[str],
    x: np.ndarray,
    labels: Mapping[str, int],
    plans: Sequence[SplitPlan],
    config: BaselineConfig | None = None,
    feature_names: Sequence[str] | None = None,
) -> list[dict[str, float]]:
    """One ranker per plan; returns test-split scores (cid -> score) per plan."""
    cids = [str(c) for c in cids]
    x = np.asarray(x, dtype=float)
    row = {c: i for i, c in enumerate(cids)}
    out = []
    for plan in plans:
        idx = {s: [row[c] for c in plan.members(s) if c in row] for s in ("train", "valid", "test")}
        missing = [c for c in plan.assignments if c not in row]
        if missing:
            raise BaselineError(f"{len(missing)} planned cid(s) lack descriptors: {', '.join(missing[:10])}")
        unlabelled = [c for c in plan.assignments if c not in labels]
        if unlabelled:
            raise BaselineError(f"{len(unlabelled)} planned cid(s) lack labels: {', '.join(unlabelled[:10])}")
        y = np.array([labels.get(c, -1) for c in cids], dtype=np.int64)
        model = fit_ranker(
            x[idx["train"]], y[idx["train"]], x[idx["valid"]], y[idx["valid"]], config, feature_names
        )
        scores = model.score(x[idx["test"]])
        out.append({cids[i]: float(s) for i, s in zip(idx["test"], scores)})
    return out
