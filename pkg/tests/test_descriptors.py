import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from oracles import ac2d_pairs, ac3d_pairs, topological_distances
from vsbench.descriptors import (
    AC2D_LEN,
    AC3D_LEN,
    DESCRIPTOR_LEN,
    descriptor_layout,
    descriptor_properties,
    full_descriptor,
    read_descriptor_csv,
    signed_autocorrelation_2d,
    signed_autocorrelation_3d,
    write_descriptor_csv,
)
from vsbench.mol import MoleculeError, aromatize, parse_smiles
from vsbench.mol.molecule import Atom, Molecule
from vsbench.physchem import native_properties
from vsbench.synthetic import embed_coordinates, random_molecules

SAMPLE = random_molecules(80, seed=21, coordinates=True)


def points(*xyz):
    return Molecule([Atom(6, coordinates=p) for p in xyz], [])


def with_xyz(smi, seed=0):
    return embed_coordinates(aromatize(parse_smiles(smi)), seed=seed)


# --- 2D ---

def test_2d_three_atom_path():
    v = signed_autocorrelation_2d(parse_smiles("CCC"), [1.0, -1.0, 1.0])
    expected = np.zeros(32)
    expected[0], expected[1] = 2, 1  # d0: (++), (--)
    expected[2 + 1] = 4  # d1 mixed
    expected[2 + 3] = 2  # d2 (++)
    assert np.array_equal(v, expected)


def test_2d_single_atom_and_zeros():
    v = signed_autocorrelation_2d(parse_smiles("C"), [1.0])
    assert v[0] == 1 and v[1:].sum() == 0
    assert not signed_autocorrelation_2d(parse_smiles("CCO"), [0.0, 0.0, 0.0]).any()


# --- 3D ---

def test_3d_examples():
    v = signed_autocorrelation_3d(points((0, 0, 0), (2.0, 0, 0)), [1.0, 1.0])
    assert v[3 * 4] == 2 and v.sum() == 2  # bin [2.0, 2.25)
    assert not signed_autocorrelation_3d(points((0, 0, 0), (0.9, 0, 0)), [1.0, 1.0]).any()
    assert not signed_autocorrelation_3d(points((0, 0, 0)), [1.0]).any()


def test_3d_needs_coordinates():
    with pytest.raises(MoleculeError):
        signed_autocorrelation_3d(parse_smiles("CC"), [1.0, 1.0])


def test_3d_half_open_bins():
    v = signed_autocorrelation_3d(points((0, 0, 0), (1.25, 0, 0)), [1.0, -1.0])
    assert v[3 * 1 + 1] == 2 and v.sum() == 2


# --- full descriptor ---

def test_layout_and_length():
    mol = with_xyz("c1ccccc1")
    d = full_descriptor(mol, native_properties(mol))
    assert len(d) == DESCRIPTOR_LEN == 391
    assert (len(d.scalars), len(d.ac2d), len(d.ac3d)) == (23, 128, 240)
    assert 4 * AC2D_LEN == 128 and 4 * AC3D_LEN == 240
    names = descriptor_layout()
    assert len(names) == 391 and len(set(names)) == 391


@pytest.mark.parametrize("cid,smi,mol", [s for s in SAMPLE if len(s[2].atoms) <= 15] + [(0, "c1ccccc1", with_xyz("c1ccccc1"))])
def test_autocorrelation_matches_pair_oracle(cid, smi, mol):
    props = native_properties(mol)
    d = full_descriptor(mol, props)
    pm = descriptor_properties(mol, props)
    dist = topological_distances(len(mol.atoms), [(b.begin, b.end) for b in mol.bonds])
    xyz = [tuple(a.coordinates) for a in mol.atoms]
    ac2d = np.concatenate([ac2d_pairs(dist, row.tolist()) for row in pm])
    ac3d = np.concatenate([ac3d_pairs(xyz, row.tolist()) for row in pm])
    assert np.allclose(d.ac2d, ac2d, atol=1e-9, rtol=0)
    assert np.allclose(d.ac3d, ac3d, atol=1e-9, rtol=0)
    assert (d.ac2d >= 0).all() and (d.ac3d >= 0).all()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, len(SAMPLE) - 1), st.integers(0, 2**32 - 1))
def test_descriptor_invariant_under_rigid_motion_and_reordering(idx, seed):
    mol = SAMPLE[idx][2]
    rng = np.random.default_rng(seed)
    rot = Rotation.random(random_state=seed % 2**31).as_matrix()
    shift = rng.uniform(-50, 50, 3)
    xyz = np.array(mol.coordinates) @ rot.T + shift
    moved = mol.copy(atoms=[a.copy(coordinates=tuple(p)) for a, p in zip(mol.atoms, xyz)])
    base = full_descriptor(mol, native_properties(mol)).to_array()
    assert np.allclose(full_descriptor(moved, native_properties(moved)).to_array(), base, atol=1e-6, rtol=0)
    shuffled = mol.renumber(rng.permutation(len(mol.atoms)).tolist())
    assert np.allclose(full_descriptor(shuffled, native_properties(shuffled)).to_array(), base, atol=1e-6, rtol=0)


def test_descriptor_csv_round_trip(tmp_path):
    rows = []
    for cid, _, mol in SAMPLE[:4]:
        rows.append((cid, full_descriptor(mol, native_properties(mol)).to_array()))
    path = tmp_path / "d.csv"
    write_descriptor_csv(path, rows)
    cids, x = read_descriptor_csv(path)
    assert cids == [str(c) for c, _ in rows]
    assert np.array_equal(x, np.vstack([r for _, r in rows]))
    header = path.read_text().splitlines()[0].split(",")
    assert header[0] == "cid" and header[-1] == "f390"
