import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vsbench.mol import BondType, parse_smiles
from vsbench.smarts import (
    SmartsConfig,
    SmartsError,
    UnsupportedFeature,
    compile_pattern,
    find_matches,
    has_match,
    load_catalog,
    parse_catalog,
)
from vsbench.synthetic import random_molecules


def match(smiles, smarts):
    return has_match(parse_smiles(smiles), compile_pattern(smarts))


@pytest.mark.parametrize(
    "smiles,smarts,expected",
    [
        ("c1ccccc1", "c1ccccc1", True),
        ("C", "[OH]", False),
        ("Cc1ccccc1", "[CH3]c", True),
        ("CCO", "[OH]", True),
        ("CC(=O)O", "C(=O)[OX2H1]", True),
        ("C1CCCCC1", "[R]", True),
        ("CCCC", "[R]", False),
        ("c1ccncc1", "[n;r6]", True),
        ("C[N+](C)(C)C", "[N+;H0]", True),
        ("CC(=O)[O-]", "[O-]", True),
        ("CC", "C=C", False),
        ("C=CC", "C=C", True),
        ("C1CC1", "[r3]", True),
        ("C1CCC1", "[r3]", False),
        ("CCN", "[N;D1]", True),
        ("CCN", "[C;!$(C=O)]", True),
        ("CC=O", "[C;!$(C=O)]", True),
        ("C=O", "[C;!$(C=O)]", False),
        ("CC.O", "C.O", True),
        ("CC", "C.O", False),
    ],
)
def test_examples(smiles, smarts, expected):
    assert match(smiles, smarts) is expected


def test_recursion_disabled_reports_unsupported():
    with pytest.raises(UnsupportedFeature) as exc:
        compile_pattern("[N+!$(*~[-1])]", SmartsConfig(max_recursion_depth=0))
    assert "$(" in exc.value.token
    compile_pattern("[N+!$(*~[-1])]")


@pytest.mark.parametrize("bad", ["C(", "[C", "C1CC", "C=", "[#]"])
def test_syntax_errors_carry_position(bad):
    with pytest.raises(SmartsError) as exc:
        compile_pattern(bad)
    assert exc.value.position is not None or exc.value.reason


def test_bundled_catalog_coverage():
    cat = load_catalog()
    assert len(cat) > 400
    assert cat.coverage >= 0.95
    assert cat.coverage_report().startswith("compiled")


def test_catalog_skips_and_reports_unsupported():
    cat = parse_catalog("[OH]\thydroxyl\n# comment\nC(\tbroken\n", None)
    assert len(cat) == 1 and cat.skipped[0][0] == "broken"
    assert cat.first_match(parse_smiles("CCO")) == "hydroxyl"
    assert cat.first_match(parse_smiles("CC")) is None


# --- brute-force oracle ---------------------------------------------------

# (SMARTS token, independent predicate over (mol, atom index))
ATOMS = [
    ("C", lambda m, i: m.atoms[i].element == 6 and not m.atoms[i].is_aromatic),
    ("c", lambda m, i: m.atoms[i].element == 6 and m.atoms[i].is_aromatic),
    ("N", lambda m, i: m.atoms[i].element == 7 and not m.atoms[i].is_aromatic),
    ("n", lambda m, i: m.atoms[i].element == 7 and m.atoms[i].is_aromatic),
    ("O", lambda m, i: m.atoms[i].element == 8 and not m.atoms[i].is_aromatic),
    ("*", lambda m, i: True),
    ("[#6]", lambda m, i: m.atoms[i].element == 6),
    ("[#7,#8]", lambda m, i: m.atoms[i].element in (7, 8)),
    ("[!#6]", lambda m, i: m.atoms[i].element != 6),
    ("[a]", lambda m, i: m.atoms[i].is_aromatic),
    ("[R]", lambda m, i: m.atom_in_ring(i)),
    ("[D2]", lambda m, i: m.degree(i) == 2),
    ("[CH2]", lambda m, i: m.atoms[i].element == 6 and not m.atoms[i].is_aromatic and m.total_h(i) == 2),
    ("[X3]", lambda m, i: m.degree(i) + m.total_h(i) == 3),
    ("[#6;H1]", lambda m, i: m.atoms[i].element == 6 and m.total_h(i) == 1),
]
BONDS = [
    ("", lambda b: b.type in (BondType.SINGLE, BondType.AROMATIC)),
    ("-", lambda b: b.type is BondType.SINGLE),
    ("=", lambda b: b.type is BondType.DOUBLE),
    (":", lambda b: b.type is BondType.AROMATIC),
    ("~", lambda b: True),
    ("@", lambda b: b.in_ring),
]


def dfs_order(parent):
    """Order in which the SMARTS writer below emits query atoms."""
    out = []

    def walk(i):
        out.append(i)
        for j in range(1, len(parent)):
            if parent[j] == i:
                walk(j)

    walk(0)
    return out


def random_pattern(rng, n_atoms):
    """Random connected query (a tree plus at most one ring closure) and its SMARTS.

    Returns ``(atoms, bonds, order, smarts)``; ``bonds`` are ``(a, b, bond kind)``
    over generator indices and ``order[k]`` is the generator index of the
    k-th atom in the SMARTS string.
    """
    atoms = [int(rng.integers(len(ATOMS))) for _ in range(n_atoms)]
    parent = [None] + [int(rng.integers(i)) for i in range(1, n_atoms)]
    bonds = [(parent[i], i, int(rng.integers(len(BONDS)))) for i in range(1, n_atoms)]
    order = dfs_order(parent)
    closure = None
    if n_atoms >= 3 and rng.random() < 0.4:
        a, b = rng.choice(n_atoms, 2, replace=False).tolist()
        if parent[a] != b and parent[b] != a:
            a, b = sorted((a, b), key=order.index)  # a is written first
            closure = (a, b, int(rng.integers(len(BONDS))))
            bonds.append(closure)

    def emit(i):
        s = ATOMS[atoms[i]][0]
        if closure and i == closure[0]:
            s += BONDS[closure[2]][0] + "9"
        elif closure and i == closure[1]:
            s += "9"
        kids = [j for j in range(1, n_atoms) if parent[j] == i]
        for pos, j in enumerate(kids):
            part = BONDS[bonds[j - 1][2]][0] + emit(j)
            s += part if pos == len(kids) - 1 else f"({part})"
        return s

    return atoms, bonds, order, emit(0)


def oracle_matches(mol, atoms, bonds):
    found = set()
    for perm in itertools.permutations(range(len(mol.atoms)), len(atoms)):
        if not all(ATOMS[t][1](mol, perm[q]) for q, t in enumerate(atoms)):
            continue
        if all(
            (bond := mol.bond_between(perm[a], perm[b])) is not None and BONDS[k][1](bond)
            for a, b, k in bonds
        ):
            found.add(perm)
    return found


SMALL = [s for _, s, m in random_molecules(400, seed=5) if len(m.atoms) <= 12] + [
    "c1ccccc1", "CC(=O)O", "C1CCNCC1", "c1ccncc1", "CCOC(=O)C=C", "OCC1CC1", "c1cc[nH]c1",
]


@settings(max_examples=500, deadline=None)
@given(st.integers(0, len(SMALL) - 1), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_matcher_agrees_with_all_injections(mol_idx, n_atoms, seed):
    mol = parse_smiles(SMALL[mol_idx])
    rng = np.random.default_rng(seed)
    atoms, bonds, order, smarts = random_pattern(rng, n_atoms)
    pattern = compile_pattern(smarts)
    expected = {tuple(p[q] for q in order) for p in oracle_matches(mol, atoms, bonds)}
    got = set(find_matches(mol, pattern))
    assert got == expected, smarts
    assert has_match(mol, pattern) is bool(expected)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(SMALL) - 1), st.integers(0, 2**32 - 1))
def test_match_invariant_under_atom_reordering(mol_idx, seed):
    mol = parse_smiles(SMALL[mol_idx])
    order = np.random.default_rng(seed).permutation(len(mol.atoms)).tolist()
    shuffled = mol.renumber(order)
    for smarts in ("c:c", "[R]~[!#6]", "C=O", "[CH2]C", "*1**1", "[a]-[#6]"):
        p = compile_pattern(smarts)
        assert has_match(mol, p) == has_match(shuffled, p)
