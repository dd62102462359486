from .baseline import (
    BaselineConfig,
    BaselineError,
    LinearRanker,
    Standardizer,
    fit_ranker,
    gradient_check,
    logistic_loss_grad,
    oversample_batches,
    train_baseline,
)
from .evaluate import METRICS, FoldResult, MetricReport, evaluate_predictions, fold_metrics, mean_se

__all__ = [
    "BaselineConfig",
    "BaselineError",
    "FoldResult",
    "LinearRanker",
    "METRICS",
    "MetricReport",
    "Standardizer",
    "evaluate_predictions",
    "fit_ranker",
    "fold_metrics",
    "gradient_check",
    "logistic_loss_grad",
    "mean_se",
    "oversample_batches",
    "train_baseline",
]
