"""Synthetic descriptor tables for exercising the baseline ranker."""

import numpy as np


def separable_dataset(n=2000, active_fraction=0.01, d=20, seed=0):
    """Gaussian features; actives are exactly the top scorers along a hidden direction."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, d))
    direction = rng.normal(size=d)
    proj = x @ direction
    n_act = int(round(n * active_fraction))
    y = np.zeros(n, dtype=np.int64)
    y[np.argsort(-proj, kind="stable")[:n_act]] = 1
    cids = [str(1000 + i) for i in range(n)]
    return cids, x, dict(zip(cids, y.tolist()))


def shuffled_labels(labels, seed=0):
    rng = np.random.default_rng(seed)
    cids = list(labels)
    y = rng.permutation([labels[c] for c in cids])
    return dict(zip(cids, y.tolist()))
