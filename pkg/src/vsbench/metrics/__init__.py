"""Early-recognition metrics: logAUC, BEDROC, EF_k, DCG_k, CG_k."""

from .core import (
    MetricError,
    bedroc,
    bedroc_from_ranks,
    cg_k,
    dcg_k,
    ef_k,
    log_auc,
    rank_labels,
    roc_vertices,
    tie_averaged,
)
from .io import MissingCidError, join_labels, read_predictions, write_predictions

__all__ = [
    "MetricError", "MissingCidError", "bedroc", "bedroc_from_ranks", "cg_k", "dcg_k", "ef_k",
    "join_labels", "log_auc", "rank_labels", "read_predictions", "roc_vertices", "tie_averaged",
    "write_predictions",
]
