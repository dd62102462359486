import json

import numpy as np
import pytest

from vsbench.mol import aromatize, parse_smiles
from vsbench.mol.canon import canonical_ranks
from vsbench.mol.normalize import molecular_weight
from vsbench.physchem import (
    SCALAR_NAMES,
    AtomProperties,
    GasteigerError,
    MissingCoordinatesError,
    PropertyFile,
    PropertyFileError,
    atom_properties,
    crippen_logp_mr,
    gasteiger_charges,
    labute_contributions,
    molecule_scalars,
    native_properties,
    tpsa_contributions,
    write_property_file,
)
from vsbench.synthetic import embed_coordinates, random_molecules

SAMPLE = [smi for _, smi, _ in random_molecules(150, seed=8)] + [
    "CC(=O)Oc1ccccc1C(=O)O", "C[N+](C)(C)CC(=O)[O-]", "c1ccc2ccccc2c1", "OC(=O)CC(N)C(=O)O",
]


def perceived(smi):
    return aromatize(parse_smiles(smi))


@pytest.fixture(scope="module")
def reference(data_dir):
    return json.loads((data_dir / "reference_molecules.json").read_text())["molecules"]


def aromatic_set(mol):
    return [i for i, a in enumerate(mol.atoms) if a.is_aromatic]


# --- Gasteiger ---

def test_gasteiger_methane_symmetry():
    q, qh = gasteiger_charges(parse_smiles("C"))
    from vsbench.mol.normalize import add_hs

    qa, _ = gasteiger_charges(add_hs(parse_smiles("C")))
    assert np.ptp(qa[1:]) < 1e-12
    assert abs(q[0] + qh[0]) < 1e-3


def test_gasteiger_signs():
    q, _ = gasteiger_charges(parse_smiles("CCO"))
    assert q[2] < q[0] and q[2] < q[1]
    q, _ = gasteiger_charges(parse_smiles("CCl"))
    assert q[1] < 0


def test_gasteiger_unknown_element():
    with pytest.raises(GasteigerError, match="Se"):
        gasteiger_charges(parse_smiles("[Se]"))


@pytest.mark.parametrize("smi", SAMPLE)
def test_charge_conservation(smi):
    m = perceived(smi)
    q, qh = gasteiger_charges(m)
    assert abs(sum(q) + sum(qh) - m.net_charge) < 1e-3


# --- table-driven properties ---

def test_benzene_tpsa_zero():
    assert tpsa_contributions(perceived("c1ccccc1")) == [0.0] * 6


def test_reference_parity_per_atom(reference, data_dir):
    """Native values equal the frozen reference values on the 20-molecule file."""
    pf = PropertyFile.read(data_dir / "reference_atom_properties.csv")
    by_cid = {r["cid"]: r for r in reference}
    compared, model_differences = 0, []
    for cid, table in pf._values.items():
        mol = perceived(by_cid[cid]["smiles"])
        if aromatic_set(mol) != by_cid[cid]["aromatic_atoms"]:
            model_differences.append(cid)
            continue
        native = native_properties(mol).as_dict()
        for (i, name), value in table.items():
            assert native[name][i] == pytest.approx(value, abs=1e-6), (cid, i, name)
        compared += 1
    assert compared >= 19 and len(model_differences) <= 1


def test_reference_parity_molecule_level(reference):
    compared = 0
    for r in reference:
        mol = perceived(r["smiles"])
        if aromatic_set(mol) != r["aromatic_atoms"]:
            continue
        compared += 1
        logp, mr = crippen_logp_mr(mol)
        contribs, h = labute_contributions(mol)
        assert logp == pytest.approx(r["logp"], abs=1e-6), r["cid"]
        assert mr == pytest.approx(r["mr"], abs=1e-6), r["cid"]
        assert sum(tpsa_contributions(mol)) == pytest.approx(r["tpsa"], abs=1e-6), r["cid"]
        assert sum(contribs) + h == pytest.approx(r["labute_asa"], abs=1e-6), r["cid"]
        assert molecular_weight(mol) == pytest.approx(r["mol_wt"], abs=1e-6), r["cid"]
        assert [mol.total_h(i) for i in range(len(mol.atoms))] == r["total_h"]
        assert len(mol.ring_info) == r["rings"]
    assert compared >= 295


@pytest.mark.parametrize("smi", SAMPLE[:60])
def test_equivalent_atoms_get_equal_values(smi):
    mol = perceived(smi)
    ranks = canonical_ranks(mol)
    props = native_properties(mol).as_dict()
    seen = {}
    for i, r in enumerate(ranks):
        if r in seen:
            j = seen[r]
            for name, arr in props.items():
                assert arr[i] == pytest.approx(arr[j], abs=1e-9), name
        seen.setdefault(r, i)


# --- property file provider ---

def test_property_file_round_trip(tmp_path):
    mols = {str(i): perceived(s) for i, s in enumerate(SAMPLE[:5])}
    native = {c: native_properties(m) for c, m in mols.items()}
    path = tmp_path / "props.csv"
    write_property_file(path, native.items())
    pf = PropertyFile.read(path)
    for c, m in mols.items():
        back = atom_properties(m, "file", source=pf, cid=c)
        for name in AtomProperties.names():
            assert np.array_equal(getattr(back, name), getattr(native[c], name))


def test_property_file_missing_rows(tmp_path):
    path = tmp_path / "props.csv"
    write_property_file(path, [("1", native_properties(perceived("CCO")))])
    pf = PropertyFile.read(path)
    with pytest.raises(PropertyFileError, match="cid 2"):
        atom_properties(perceived("CCO"), "file", source=pf, cid="2")
    with pytest.raises(PropertyFileError, match="atom 3"):
        atom_properties(perceived("CCCO"), "file", source=pf, cid="1")


# --- scalars ---

def scalars(smi):
    m = embed_coordinates(perceived(smi), seed=0)
    return molecule_scalars(m, native_properties(m))


def test_scalar_examples():
    s = scalars("c1ccccc1")
    assert (s["rings"], s["aromatic_rings"], s["rotatable_bonds"], s["bond_girth"]) == (1, 1, 0, 3)
    s = scalars("C")
    assert (s["girth"], s["bond_girth"], s["rings"]) == (0, 0, 0)
    assert scalars("c1ccc2ccccc2c1")["atoms_in_fused_rings"] == 10
    assert len(s) == len(SCALAR_NAMES) == 23


def test_lipinski_style_counts():
    s = scalars("CC(=O)Nc1ccc(O)cc1")
    assert s["hbond_donors"] == 2 and s["hbond_acceptors"] == 3
    assert s["rotatable_bonds"] == 1  # amide C-N excluded, aryl-N counts


def test_girth_needs_coordinates():
    m = perceived("CCO")
    with pytest.raises(MissingCoordinatesError):
        molecule_scalars(m, native_properties(m))
    assert np.isnan(molecule_scalars(m, native_properties(m), require_coordinates=False)["girth"])


@pytest.mark.parametrize(
    "smi", ["C1CCCCC1", "c1ccccc1", "C1CC1", "C#C", "C=O", "O=C=O", "CC", "C=C=C=C", "c1ccc2ccccc2c1", "CC(C)(C)C"]
)
def test_rotatable_zero_when_all_bonds_terminal_ring_or_multiple(smi):
    m = perceived(smi)
    assert molecule_scalars(m, native_properties(m), require_coordinates=False)["rotatable_bonds"] == 0
