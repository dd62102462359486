from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vsbench.mol import parse_smiles
from vsbench.mol.canon import canonical_form
from vsbench.splits import (
    ACYCLIC,
    SplitError,
    assign_folds,
    bm_scaffold,
    make_cv_folds,
    read_split_file,
    scaffold_split,
    write_split_file,
)
from vsbench.synthetic import random_molecules


def canon(smi):
    return canonical_form(parse_smiles(smi))


def labelled(n, n_act, seed=0):
    rng = np.random.default_rng(seed)
    y = np.zeros(n, dtype=int)
    y[rng.choice(n, n_act, replace=False)] = 1
    return [(str(i), int(v)) for i, v in enumerate(y)]


# --- Murcko scaffolds ---

def test_scaffold_prunes_side_chain():
    assert bm_scaffold(parse_smiles("CC1CCCCC1")) == canon("C1CCCCC1")


def test_scaffold_acyclic_sentinel():
    assert bm_scaffold(parse_smiles("CCCCCC")) == ACYCLIC


def test_scaffold_keeps_linker():
    assert bm_scaffold(parse_smiles("c1ccccc1CCc1ccccc1")) == canon("c1ccccc1CCc1ccccc1")


def test_scaffold_exocyclic_carbonyl_variant():
    mol = parse_smiles("O=C1CCCCC1C")
    assert bm_scaffold(mol) == canon("C1CCCCC1")
    assert bm_scaffold(mol, keep_exocyclic_multiple=True) == canon("O=C1CCCCC1")


def test_scaffold_ignores_substituent_identity():
    assert bm_scaffold(parse_smiles("Clc1ccccc1")) == bm_scaffold(parse_smiles("OCc1ccccc1"))


# --- adapted CV ---

def test_cv_validation_precedes_test_with_wraparound():
    folds = assign_folds(labelled(100, 10), k=5, seed=1)
    plans = make_cv_folds(labelled(100, 10), k=5, seed=1)
    for plan in plans:
        for cid, split in plan.assignments.items():
            f = folds[cid]
            expected = "test" if f == plan.fold else "valid" if f == (plan.fold - 1) % 5 else "train"
            assert split == expected
    valid_folds0 = {folds[c] for c in plans[0].members("valid")}
    valid_folds2 = {folds[c] for c in plans[2].members("valid")}
    assert valid_folds0 == {4} and valid_folds2 == {1}


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.integers(0, 400), st.integers(0, 1000))
def test_cv_partition_and_stratification(k, extra, seed):
    n_act = k + extra % 37
    recs = labelled(n_act + 50 + extra, n_act, seed)
    plans = make_cv_folds(recs, k=k, seed=seed)
    tests = [set(p.members("test")) for p in plans]
    assert set().union(*tests) == {c for c, _ in recs}
    assert sum(len(t) for t in tests) == len(recs)
    y = dict(recs)
    for t in tests:
        assert abs(sum(y[c] for c in t) - n_act / k) <= 1
    sizes = [len(t) for t in tests]
    assert max(sizes) - min(sizes) <= 1


def test_cv_errors():
    with pytest.raises(SplitError):
        make_cv_folds(labelled(50, 10), k=2)
    with pytest.raises(SplitError):
        make_cv_folds(labelled(50, 3), k=5)


def test_cv_deterministic():
    a = make_cv_folds(labelled(200, 20), k=5, seed=7)
    b = make_cv_folds(labelled(200, 20), k=5, seed=7)
    assert [p.assignments for p in a] == [p.assignments for p in b]


# --- scaffold split ---

def test_large_bin_forced_to_train():
    keys = {str(i): "big" if i < 40 else f"s{i}" for i in range(100)}
    plan = scaffold_split(keys, seed=0)
    assert {plan.assignments[str(i)] for i in range(40)} == {"train"}


def test_equal_large_bins_warn():
    keys = {str(i): f"b{i % 5}" for i in range(100)}
    plan = scaffold_split(keys, seed=0)
    assert set(plan.assignments.values()) == {"train"}
    assert plan.warnings


def test_singletons_follow_quota():
    plan = scaffold_split({str(i): f"s{i}" for i in range(500)}, seed=3)
    c = plan.counts()
    for name, target in (("train", 300), ("valid", 100), ("test", 100)):
        assert abs(c[name] - target) <= 0.05 * target


def test_scaffold_split_too_small():
    with pytest.raises(SplitError):
        scaffold_split({"1": "a", "2": "b"})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=3, max_size=300), st.integers(0, 99))
def test_scaffold_disjointness_property(bins, seed):
    keys = {str(i): f"k{b}" for i, b in enumerate(bins)}
    plan = scaffold_split(keys, seed=seed)
    split_of = {}
    for cid, key in keys.items():
        assert split_of.setdefault(key, plan.assignments[cid]) == plan.assignments[cid]
    assert scaffold_split(keys, seed=seed).assignments == plan.assignments


def test_scaffold_split_on_random_molecules():
    mols = random_molecules(500, seed=11)
    keys = {str(cid): bm_scaffold(m) for cid, _, m in mols}
    plan = scaffold_split(keys, seed=0)
    by_key = {}
    for cid, key in keys.items():
        by_key.setdefault(key, set()).add(plan.assignments[cid])
    assert all(len(v) == 1 for v in by_key.values())
    assert Counter(plan.assignments.values())["test"] > 0


# --- files ---

def test_split_file_roundtrip(tmp_path):
    recs = labelled(60, 10)
    plans = make_cv_folds(recs, k=5, seed=2)
    path = tmp_path / "split.csv"
    write_split_file(path, plans)
    back = read_split_file(path)
    assert [p.assignments for p in back] == [p.assignments for p in plans]
    sc = scaffold_split({c: f"s{int(c) % 9}" for c, _ in recs}, seed=1)
    write_split_file(path, [sc])
    assert read_split_file(path)[0].assignments == sc.assignments
