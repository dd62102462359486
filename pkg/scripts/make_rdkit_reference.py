"""Freeze reference property values computed with RDKit (development-only oracle).

Writes two fixtures under tests/data/:

* ``reference_atom_properties.csv``: per-atom Gasteiger, Crippen, TPSA,
  Labute and EState values for 20 molecules in the property-file layout.
* ``reference_molecules.json``: molecule-level values and aromatic-atom
  flags for 300 molecules.

Input molecules are the first records of RDKit's bundled NCI sample
(first_5K.smi, distributed with RDKit under the BSD license).

Usage: python scripts/make_rdkit_reference.py [path/to/first_5K.smi]
"""

import csv
import json
import sys
from pathlib import Path

from rdkit import Chem, RDLogger
from rdkit.Chem import Crippen, Descriptors, rdMolDescriptors, rdPartialCharges
from rdkit.Chem.EState import EState

RDLogger.DisableLog("rdApp.*")

OUT = Path(__file__).resolve().parents[1] / "tests" / "data"
DEFAULT_INPUT = Path(Chem.RDConfig.RDDataDir) / "NCI" / "first_5K.smi"
ALLOWED = {1, 6, 7, 8, 9, 15, 16, 17, 35, 53}


def read_smiles(path):
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if len(parts) >= 2:
            yield parts[1], parts[0]


def atom_rows(mol):
    """Per-atom values on the implicit-hydrogen graph, keyed like the property file."""
    rdPartialCharges.ComputeGasteigerCharges(mol)
    q = [a.GetDoubleProp("_GasteigerCharge") for a in mol.GetAtoms()]
    qh = [a.GetDoubleProp("_GasteigerHCharge") for a in mol.GetAtoms()]
    contribs = rdMolDescriptors._CalcCrippenContribs(mol)
    tpsa = rdMolDescriptors._CalcTPSAContribs(mol)
    asa, _ = rdMolDescriptors._CalcLabuteASAContribs(mol)
    estate = EState.EStateIndices(mol)
    # implicit-H Crippen contributions, summed onto each parent
    hmol = Chem.AddHs(mol)
    hcon = rdMolDescriptors._CalcCrippenContribs(hmol)
    h_logp = [0.0] * mol.GetNumAtoms()
    h_mr = [0.0] * mol.GetNumAtoms()
    for a in hmol.GetAtoms():
        if a.GetIdx() >= mol.GetNumAtoms():
            parent = a.GetNeighbors()[0].GetIdx()
            h_logp[parent] += hcon[a.GetIdx()][0]
            h_mr[parent] += hcon[a.GetIdx()][1]
    cols = {
        "gasteiger_charge": q,
        "gasteiger_h_charge": qh,
        "sigma_charge": q,
        "crippen_logp": [c[0] for c in contribs],
        "crippen_mr": [c[1] for c in contribs],
        "crippen_h_logp": h_logp,
        "crippen_h_mr": h_mr,
        "tpsa_contrib": list(tpsa),
        "labute_asa_contrib": list(asa),
        "estate_index": list(estate),
    }
    return cols


def main(path=DEFAULT_INPUT):
    picked = []
    for cid, smi in read_smiles(path):
        mol = Chem.MolFromSmiles(smi)
        if mol is None or not mol.GetNumAtoms():
            continue
        if any(a.GetAtomicNum() not in ALLOWED for a in mol.GetAtoms()):
            continue
        if len(Chem.GetMolFrags(mol)) > 1:
            continue
        picked.append((cid, smi, mol))
        if len(picked) == 300:
            break

    with open(OUT / "reference_atom_properties.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["cid", "atom_index", "prop_name", "value"])
        for cid, smi, mol in picked[:20]:
            for name, values in atom_rows(mol).items():
                for i, v in enumerate(values):
                    w.writerow([cid, i, name, repr(float(v))])

    records = []
    for cid, smi, mol in picked:
        records.append({
            "cid": cid,
            "smiles": smi,
            "aromatic_atoms": [a.GetIdx() for a in mol.GetAtoms() if a.GetIsAromatic()],
            "total_h": [a.GetTotalNumHs() for a in mol.GetAtoms()],
            "mol_wt": Descriptors.MolWt(mol),
            "logp": Crippen.MolLogP(mol),
            "mr": Crippen.MolMR(mol),
            "tpsa": rdMolDescriptors.CalcTPSA(mol),
            "labute_asa": rdMolDescriptors.CalcLabuteASA(mol),
            "rings": mol.GetRingInfo().NumRings(),
        })
    meta = {
        "source": "RDKit NCI sample first_5K.smi (BSD license)",
        "rdkit_version": Chem.rdBase.rdkitVersion,
        "molecules": records,
    }
    (OUT / "reference_molecules.json").write_text(json.dumps(meta, indent=1) + "\n")
    print(f"wrote {len(picked[:20])} + {len(records)} reference molecules to {OUT}")


if __name__ == "__main__":
    main(*sys.argv[1:2])
