import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bedroc_closed_form_mp, bedroc_mp, dcg_brute, ef_brute
from vsbench.metrics import (
    MetricError,
    MissingCidError,
    bedroc,
    bedroc_from_ranks,
    cg_k,
    dcg_k,
    ef_k,
    join_labels,
    log_auc,
    rank_labels,
    read_predictions,
    roc_vertices,
    tie_averaged,
    write_predictions,
)

# TPR = FPR integrated over log10(FPR) in [-3, -1], divided by 2.
RANDOM_LOGAUC = (0.1 - 0.001) / math.log(10) / 2


def ranked(n_total, active_ranks):
    """Scores/labels such that actives sit at the given 1-based ranks."""
    scores = np.arange(n_total, 0, -1, dtype=float)
    labels = np.zeros(n_total, dtype=int)
    labels[np.asarray(active_ranks) - 1] = 1
    return scores, labels


# --- logAUC ---

def test_logauc_perfect_is_one():
    s, y = ranked(1000, range(1, 11))
    assert log_auc(s, y) == 1.0


def test_logauc_worst_is_zero():
    s, y = ranked(1000, range(991, 1001))
    assert log_auc(s, y) == 0.0


def test_logauc_all_tied_is_random_diagonal():
    y = np.r_[np.ones(7), np.zeros(93)]
    assert log_auc(np.zeros(100), y) == pytest.approx(RANDOM_LOGAUC, abs=1e-6)
    assert RANDOM_LOGAUC == pytest.approx(0.0215, abs=5e-4)


def test_logauc_first_segment_interpolates_from_origin():
    # first vertex at FPR 0.01 with TPR 1: the chord from (0,0) is TPR = 100 FPR
    # one active and one inactive tie at the top score; 199 inactives in total
    s = np.r_[1.0, 1.0, np.zeros(198)]
    y = np.r_[1, np.zeros(199, dtype=int)]
    v = log_auc(s, y)
    x0 = 1 / 199
    expected = ((x0 - 0.001) / x0 / math.log(10) + (math.log10(0.1) - math.log10(x0))) / 2
    assert v == pytest.approx(expected, rel=1e-12)


def test_logauc_requires_both_classes():
    with pytest.raises(MetricError):
        log_auc([1, 2, 3], [0, 0, 0])
    with pytest.raises(MetricError):
        log_auc([1, 2, 3], [1, 1, 1])


def test_logauc_rejects_nan_and_bad_labels():
    with pytest.raises(MetricError):
        log_auc([1.0, float("nan")], [0, 1])
    with pytest.raises(MetricError):
        log_auc([1.0, 2.0], [0, 2])


def test_roc_vertices_group_ties():
    fpr, tpr = roc_vertices([3, 2, 2, 1], [1, 1, 0, 0])
    assert list(fpr) == [0.0, 0.0, 0.5, 1.0]
    assert list(tpr) == [0.0, 0.5, 1.0, 1.0]


# --- BEDROC ---

@pytest.mark.parametrize("n_total,n", [(10, 1), (10, 5), (100, 3), (1000, 500), (10_000, 1), (10_000, 37)])
def test_bedroc_extremes(n_total, n):
    assert bedroc_from_ranks(range(1, n + 1), n_total) == pytest.approx(1.0, abs=1e-9)
    assert bedroc_from_ranks(range(n_total - n + 1, n_total + 1), n_total) == pytest.approx(0.0, abs=1e-9)


def test_bedroc_small_example_matches_arbitrary_precision():
    assert bedroc_from_ranks([2], 4) == pytest.approx(float(bedroc_mp([2], 4)), abs=1e-12)


def test_bedroc_oracles_agree():
    ranks = [3, 17, 40, 41, 200]
    assert float(bedroc_mp(ranks, 500)) == pytest.approx(float(bedroc_closed_form_mp(ranks, 500)), abs=1e-30)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 3000), st.data(), st.sampled_from([5.0, 20.0, 80.0]))
def test_bedroc_matches_mp_oracle(n_total, data, alpha):
    n = data.draw(st.integers(1, n_total - 1))
    seed = data.draw(st.integers(0, 2**32 - 1))
    ranks = np.sort(np.random.default_rng(seed).choice(np.arange(1, n_total + 1), n, replace=False))
    assert bedroc_from_ranks(ranks, n_total, alpha) == pytest.approx(
        float(bedroc_mp(ranks.tolist(), n_total, alpha)), abs=1e-12
    )


def test_bedroc_errors():
    with pytest.raises(MetricError):
        bedroc_from_ranks([], 10)
    with pytest.raises(MetricError):
        bedroc_from_ranks(range(1, 11), 10)


def test_bedroc_scores_wrapper():
    s, y = ranked(50, [1, 2, 3])
    assert bedroc(s, y) == pytest.approx(1.0, abs=1e-12)


# --- EF / DCG / CG ---

def test_ef_examples():
    s, y = ranked(1000, [1, 20, 50, 80, 100, 101, 300, 500, 700, 999])
    assert ef_k(s, y, 100) == pytest.approx(5.0)
    s, y = ranked(1000, range(1, 11))
    assert ef_k(s, y, 100) == pytest.approx(10.0)
    s, y = ranked(1000, range(101, 111))
    assert ef_k(s, y, 100) == 0.0


def test_ef_errors():
    s, y = ranked(50, [1])
    with pytest.raises(MetricError):
        ef_k(s, y, 51)
    with pytest.raises(MetricError):
        ef_k(s, np.zeros(50, dtype=int), 10)


def test_dcg_examples():
    s, y = ranked(10, [1, 3])
    assert dcg_k(s, y, 100) == pytest.approx(1.5)
    assert cg_k(s, y, 100) == 2
    s, y = ranked(200, [150])
    assert dcg_k(s, y, 100) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 300), st.integers(1, 150), st.integers(0, 2**32 - 1))
def test_ef_dcg_match_brute_force(n_total, k, seed):
    rng = np.random.default_rng(seed)
    k = min(k, n_total)
    labels = (rng.random(n_total) < 0.2).astype(int)
    labels[rng.integers(n_total)] = 1
    scores = rng.permutation(n_total).astype(float)
    assert ef_k(scores, labels, k) == ef_brute(scores.tolist(), labels.tolist(), k)
    assert dcg_k(scores, labels, k) == dcg_brute(scores.tolist(), labels.tolist(), k)
    assert dcg_k(scores, labels, k) <= cg_k(scores, labels, k)


# --- invariants ---

@settings(max_examples=80, deadline=None)
@given(st.integers(5, 400), st.integers(0, 2**32 - 1))
def test_rank_only_dependence(n_total, seed):
    rng = np.random.default_rng(seed)
    scores = rng.normal(size=n_total)
    labels = np.zeros(n_total, dtype=int)
    labels[rng.choice(n_total, max(1, n_total // 10), replace=False)] = 1
    labels[0 if labels.sum() == n_total else labels.argmin()] = 0
    moved = np.exp(3 * scores) + 7
    k = min(100, n_total)
    assert log_auc(moved, labels) == pytest.approx(log_auc(scores, labels), abs=1e-12)
    assert bedroc(moved, labels) == pytest.approx(bedroc(scores, labels), abs=1e-12)
    assert ef_k(moved, labels, k) == ef_k(scores, labels, k)
    assert dcg_k(moved, labels, k) == dcg_k(scores, labels, k)


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 300), st.integers(0, 2**32 - 1))
def test_promoting_an_active_never_hurts(n_total, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_total))
    ranks = np.sort(rng.choice(np.arange(1, n_total + 1), n, replace=False))
    movable = [i for i, r in enumerate(ranks) if r > 1 and r - 1 not in set(ranks)]
    if not movable:
        return
    better = ranks.copy()
    better[movable[0]] -= 1
    k = int(rng.integers(1, n_total + 1))
    s0, y0 = ranked(n_total, ranks)
    s1, y1 = ranked(n_total, better)
    assert bedroc(s1, y1) >= bedroc(s0, y0) - 1e-12
    assert ef_k(s1, y1, k) >= ef_k(s0, y0, k)
    assert dcg_k(s1, y1, k) >= dcg_k(s0, y0, k) - 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 500), st.integers(0, 2**32 - 1))
def test_metric_ranges(n_total, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_total))
    labels = np.zeros(n_total, dtype=int)
    labels[rng.choice(n_total, n, replace=False)] = 1
    scores = rng.normal(size=n_total)
    k = int(rng.integers(1, n_total + 1))
    assert 0.0 <= bedroc(scores, labels) <= 1.0 + 1e-12
    assert 0.0 <= log_auc(scores, labels) <= 1.0
    assert 0.0 <= ef_k(scores, labels, k) <= min(n_total / k, n_total / n) + 1e-12
    assert 0.0 <= dcg_k(scores, labels, k) <= sum(1 / math.log2(i + 1) for i in range(1, k + 1)) + 1e-12


def test_random_ranking_logauc_monte_carlo():
    rng = np.random.default_rng(2024)
    labels = np.r_[np.ones(100, dtype=int), np.zeros(9900, dtype=int)]
    vals = [log_auc(rng.random(10_000), labels) for _ in range(100)]
    assert abs(np.mean(vals) - 0.0215) < 0.005


# --- ties and IO ---

def test_rank_labels_seeded_tie_break():
    s = np.zeros(20)
    y = np.r_[np.ones(5, dtype=int), np.zeros(15, dtype=int)]
    a = rank_labels(s, y, seed=3)
    assert np.array_equal(a, rank_labels(s, y, seed=3))
    assert list(rank_labels(s, y, seed=None)) == list(y)


def test_tie_averaged_reports_spread_only_with_ties():
    s, y = ranked(100, [5, 50])
    mean, sd = tie_averaged(bedroc, s, y)
    assert sd == 0.0 and mean == bedroc(s, y)
    mean, sd = tie_averaged(ef_k, np.zeros(100), y, k=10, n_shuffles=20, seed=1)
    assert sd > 0.0
    assert 0.0 <= mean <= 5.0


def test_prediction_roundtrip_and_join(tmp_path):
    p = tmp_path / "pred.tsv"
    write_predictions(p, {"1": 0.5, "2": -1.25, "3": 3.0})
    assert read_predictions(p) == {"1": 0.5, "2": -1.25, "3": 3.0}
    cids, s, y = join_labels(read_predictions(p), {"1": 1, "2": 0, "3": 0})
    assert cids == ["1", "2", "3"]
    assert list(s) == [0.5, -1.25, 3.0] and list(y) == [1, 0, 0]
    with pytest.raises(MissingCidError) as exc:
        join_labels({"1": 0.5}, {"1": 1, "9": 0})
    assert "9" in str(exc.value)
