import math
import statistics
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from benchdata import separable_dataset, shuffled_labels
from vsbench.bench.baseline import (
    BaselineConfig,
    BaselineError,
    Standardizer,
    fit_ranker,
    gradient_check,
    logistic_loss_grad,
    oversample_batches,
    train_baseline,
)
from vsbench.bench.evaluate import METRICS, MetricReport, evaluate_predictions, fold_metrics, mean_se
from vsbench.bench.plot import bar_chart_svg
from vsbench.metrics.core import ef_k, log_auc
from vsbench.metrics.io import MissingCidError, write_predictions
from vsbench.splits.cv import make_cv_folds
from vsbench.splits.plan import SplitPlan

RANDOM_LOGAUC = (0.1 - 0.001) / math.log(10) / 2


def test_mean_se():
    mean, se = mean_se([1.0, 2.0, 3.0])
    assert mean == 2.0
    assert se == pytest.approx(1.0 / math.sqrt(3))
    assert mean_se([4.0]) == (4.0, None)
    with pytest.raises(ValueError):
        mean_se([])


def test_fold_metrics_oracle_scores():
    y = np.array([1] * 5 + [0] * 195)
    res = fold_metrics(y.astype(float), y)
    assert res.values["logauc"] == 1.0
    assert res.values["bedroc"] == pytest.approx(1.0, abs=1e-12)
    assert res.values["ef100"] == pytest.approx((5 / 100) / (5 / 200))
    assert res.n == 200 and res.n_actives == 5


def test_fold_metrics_constant_scores():
    y = np.array([1] * 10 + [0] * 990)
    res = fold_metrics(np.zeros(1000), y)
    assert res.values["logauc"] == pytest.approx(RANDOM_LOGAUC, abs=1e-9)
    assert res.tie_std["ef100"] > 0.0


def test_fold_metrics_clamps_k():
    res = fold_metrics([3.0, 2.0, 1.0], [1, 0, 0])
    assert res.k == 3
    assert res.values["ef100"] == pytest.approx(1.0)


def _cv_fixture(active_ranks):
    """One plan per entry; fold i has 10 compounds scored 10..1, actives at the given ranks."""
    k = len(active_ranks)
    folds = {f"{i}-{r}": i for i in range(k) for r in range(1, 11)}
    plans = [SplitPlan("adapted_cv", {c: "test" if f == i else "train" for c, f in folds.items()}, 0, i, k)
             for i in range(k)]
    preds, labels = [], {}
    for i, ranks in enumerate(active_ranks):
        preds.append({f"{i}-{r}": float(11 - r) for r in range(1, 11)})
        labels.update({f"{i}-{r}": int(r in ranks) for r in range(1, 11)})
    return plans, preds, labels


def test_evaluate_predictions_hand_arithmetic():
    active_ranks = [(1, 2), (1, 3), (2, 3), (1, 10), (5, 6)]
    plans, preds, labels = _cv_fixture(active_ranks)
    report = evaluate_predictions(preds, plans, labels)
    dcg = [sum(1.0 / math.log2(r + 1) for r in ranks) for ranks in active_ranks]
    assert [f.values["dcg100"] for f in report.folds] == pytest.approx(dcg, abs=1e-12)
    assert report.aggregate["dcg100"]["mean"] == pytest.approx(sum(dcg) / 5, abs=1e-12)
    assert report.aggregate["dcg100"]["se"] == pytest.approx(statistics.stdev(dcg) / math.sqrt(5), abs=1e-12)
    # k clamps to the 10-compound fold, where every active is inside the top k
    assert all(f.values["ef100"] == pytest.approx(1.0) for f in report.folds)
    assert [f.fold for f in report.folds] == [0, 1, 2, 3, 4]
    assert report.split == "adapted_cv(k=5, seed=0)"


def test_evaluate_predictions_missing_and_extra():
    plans, preds, labels = _cv_fixture([(1,), (2,), (3,)])
    preds[0]["0-99"] = 1.0
    report = evaluate_predictions(preds, plans, labels)
    assert report.folds[0].extra_cids == 1
    del preds[1]["1-4"]
    with pytest.raises(MissingCidError):
        evaluate_predictions(preds, plans, labels)
    with pytest.raises(ValueError):
        evaluate_predictions(preds[:2], plans, labels)


def test_evaluate_predictions_from_files(tmp_path):
    plans, preds, labels = _cv_fixture([(1, 4), (2, 9), (3, 5)])
    paths = []
    for i, p in enumerate(preds):
        path = tmp_path / f"fold{i}.csv"
        write_predictions(path, p)
        paths.append(path)
    a = evaluate_predictions(paths, plans, labels, version="v1")
    b = evaluate_predictions(preds, plans, labels, version="v1")
    assert a.to_json() == b.to_json()


def test_metric_report_round_trip():
    plans, preds, labels = _cv_fixture([(1, 4), (2, 9), (3, 5)])
    report = evaluate_predictions(preds, plans, labels, version="v2")
    back = MetricReport.from_json(report.to_json())
    assert back.to_json() == report.to_json()
    table = report.table()
    for m in METRICS:
        assert m in table
    assert len(table.splitlines()) == 3 + 2 + 3


def test_metric_report_single_fold_se_na():
    plans, preds, labels = _cv_fixture([(1, 4)])
    report = evaluate_predictions(preds, plans, labels)
    assert report.aggregate["logauc"]["se"] is None
    assert "n/a" in report.table()


def test_oversample_one_percent_actives():
    y = np.array([1] * 20 + [0] * 1980)
    counts = [int(y[b].sum()) for b in oversample_batches(y, 128, seed=0, n_batches=1000)]
    assert abs(np.mean(counts) - 64) <= 3


def test_oversample_balanced_is_uniform():
    y = np.array([0, 1] * 50)
    idx = np.concatenate(list(oversample_batches(y, 100, seed=1, n_batches=400)))
    freq = np.bincount(idx, minlength=100) / len(idx)
    assert np.allclose(freq, 0.01, atol=0.003)


def test_oversample_single_class_rejected():
    with pytest.raises(BaselineError):
        next(oversample_batches([0, 0, 0], 4))


def test_oversample_deterministic():
    y = np.array([1] * 3 + [0] * 50)
    a = list(oversample_batches(y, 8, seed=5, n_batches=10))
    b = list(oversample_batches(y, 8, seed=5, n_batches=10))
    assert all((p == q).all() for p, q in zip(a, b))


def test_standardizer_passes_constant_columns():
    x = np.array([[1.0, 5.0], [3.0, 5.0], [5.0, 5.0]])
    s = Standardizer.fit(x)
    t = s.transform(x)
    assert np.allclose(t[:, 0], (x[:, 0] - 3.0) / math.sqrt(8 / 3))
    assert np.array_equal(t[:, 1], x[:, 1])


def test_logistic_loss_matches_naive_formula():
    rng = np.random.default_rng(0)
    x, y = rng.normal(size=(30, 4)), rng.integers(0, 2, 30).astype(float)
    w, b, l2 = rng.normal(size=4), 0.3, 0.01
    p = 1 / (1 + np.exp(-(x @ w + b)))
    naive = -np.mean(y * np.log(p) + (1 - y) * np.log(1 - p)) + 0.5 * l2 * w @ w
    loss, gw, gb = logistic_loss_grad(w, b, x, y, l2)
    assert loss == pytest.approx(naive, rel=1e-12)
    assert np.allclose(gw, x.T @ (p - y) / 30 + l2 * w)
    assert gb == pytest.approx(np.mean(p - y))


def test_logistic_loss_stable_for_large_margins():
    x = np.array([[1000.0], [-1000.0]])
    loss, gw, gb = logistic_loss_grad(np.array([1.0]), 0.0, x, np.array([0.0, 1.0]))
    assert math.isfinite(loss) and np.isfinite(gw).all() and math.isfinite(gb)
    assert loss == pytest.approx(1000.0)


def test_gradient_check():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(200, 12))
    y = rng.integers(0, 2, 200).astype(float)
    assert gradient_check(x, y, n_points=50) < 1e-5


def test_fit_ranker_rejects_nonfinite_features():
    x = np.ones((10, 3))
    x[2, 1] = np.nan
    with pytest.raises(BaselineError, match="logp"):
        fit_ranker(x, [1, 0] * 5, feature_names=["mw", "logp", "tpsa"])


def test_train_baseline_deterministic():
    cids, x, labels = separable_dataset(400, 0.05, d=6, seed=3)
    plans = make_cv_folds([(c, labels[c]) for c in cids], k=4, seed=0)
    cfg = BaselineConfig(max_epochs=20)
    a = train_baseline(cids, x, labels, plans, cfg)
    b = train_baseline(cids, x, labels, plans, cfg)
    assert a == b
    assert [set(s) for s in a] == [set(p.members("test")) for p in plans]


def test_train_baseline_missing_inputs():
    cids, x, labels = separable_dataset(200, 0.05, d=4)
    plans = make_cv_folds([(c, labels[c]) for c in cids], k=4, seed=0)
    with pytest.raises(BaselineError, match="descriptors"):
        train_baseline(cids[1:], x[1:], labels, plans)
    partial = dict(labels)
    partial.pop(cids[0])
    with pytest.raises(BaselineError, match="labels"):
        train_baseline(cids, x, partial, plans)


def test_train_baseline_accepts_descriptor_superset():
    cids, x, labels = separable_dataset(300, 0.05, d=4)
    plans = make_cv_folds([(c, labels[c]) for c in cids[:200]], k=4, seed=0)
    scores = train_baseline(cids, x, {c: labels[c] for c in cids[:200]}, plans, BaselineConfig(max_epochs=5))
    assert sum(len(s) for s in scores) == 200


def test_baseline_separable_enrichment():
    cids, x, labels = separable_dataset(2000, 0.01, seed=0)
    plans = make_cv_folds([(c, labels[c]) for c in cids], k=5, seed=0)
    pooled = {}
    for s in train_baseline(cids, x, labels, plans):
        pooled.update(s)
    s = np.array([pooled[c] for c in cids])
    y = np.array([labels[c] for c in cids])
    assert ef_k(s, y, 100) >= 10


def test_baseline_shuffled_labels_near_random():
    cids, x, labels = separable_dataset(10_000, 0.05, seed=1)
    labels = shuffled_labels(labels, seed=2)
    plans = make_cv_folds([(c, labels[c]) for c in cids], k=5, seed=0)
    values = [log_auc(list(s.values()), [labels[c] for c in s]) for s in train_baseline(cids, x, labels, plans)]
    assert abs(np.mean(values) - RANDOM_LOGAUC) <= 0.01


def test_bar_chart_svg_is_valid_xml():
    svg = bar_chart_svg(["logauc", "bedroc"], ["a<b", "c"], [[0.1, 0.5], [0.2, 0.4]], [[0.01, None], [None, 0.05]],
                        title="t & u")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert len([e for e in root.iter() if e.tag.endswith("rect")]) == 1 + 4 + 2
