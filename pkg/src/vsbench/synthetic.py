"""Seeded random drug-like molecules for tests and throughput runs.

Molecules are assembled from ring blocks, linkers and substituents as
SMILES text.  ``embed_coordinates`` gives crude but valid 3D positions
(bond-length steps in random directions); they exercise distance-based
code paths and are not conformers.
"""

from __future__ import annotations

import numpy as np

from .mol.molecule import Molecule
from .mol.smiles import SmilesError, parse_smiles

RINGS = (
    "c1ccccc1", "c1ccncc1", "c1ccc2ccccc2c1", "C1CCCCC1", "C1CCNCC1", "C1CCOC1", "c1ccsc1",
    "c1cn[nH]c1", "c1ccoc1", "C1CC1", "c1ccc2nccnc2c1", "C1CCN(C)CC1", "c1ccc2[nH]ccc2c1",
    "C1CCC(=O)N1", "c1cncnc1", "C1COCCN1",
)
LINKERS = ("", "C", "CC", "C(=O)N", "NC(=O)", "O", "N", "CC(=O)", "S(=O)(=O)N", "OCC", "C=C", "CN")
PREFIXES = (  # attach through the last atom
    "", "", "C", "CC", "F", "Cl", "Br", "O", "N", "CO", "OC(=O)", "N#C", "FC(F)(F)", "CC(C)",
    "[O-][N+](=O)", "[O-]C(=O)", "[NH3+]", "CS", "NC(=O)",
)
SUFFIXES = (  # attach through the first atom
    "", "", "C", "CC", "F", "Cl", "Br", "O", "N", "OC", "C(=O)O", "C#N", "C(F)(F)F", "C(C)C",
    "[N+](=O)[O-]", "C(=O)[O-]", "[NH3+]", "SC", "C(N)=O",
)


def random_smiles(rng: np.random.Generator) -> str:
    n_rings = int(rng.integers(1, 4))
    parts = [PREFIXES[rng.integers(len(PREFIXES))]]
    for k in range(n_rings):
        if k:
            parts.append(LINKERS[rng.integers(len(LINKERS))])
        parts.append(RINGS[rng.integers(len(RINGS))])
    parts.append(SUFFIXES[rng.integers(len(SUFFIXES))])
    return "".join(parts)


def embed_coordinates(mol: Molecule, seed: int = 0, bond_length: float = 1.5, spread: float = 0.1) -> Molecule:
    """Copy of ``mol`` with positions placed breadth-first from atom 0.

    Each bond gets a length drawn uniformly from ``bond_length ± spread``, so
    interatomic distances do not sit exactly on distance-bin edges.  The
    geometry is a placeholder, not a conformer.
    """
    rng = np.random.default_rng(seed)
    n = len(mol.atoms)
    pos = np.full((n, 3), np.nan)
    for start in range(n):
        if not np.isnan(pos[start, 0]):
            continue
        pos[start] = rng.normal(scale=5.0, size=3) if start else 0.0
        queue = [start]
        while queue:
            i = queue.pop(0)
            for j in mol.neighbors(i):
                if np.isnan(pos[j, 0]):
                    v = rng.normal(size=3)
                    length = bond_length + rng.uniform(-spread, spread)
                    pos[j] = pos[i] + length * v / np.linalg.norm(v)
                    queue.append(j)
    atoms = [a.copy(coordinates=tuple(float(x) for x in p)) for a, p in zip(mol.atoms, pos)]
    return mol.copy(atoms=atoms)


def random_molecules(n: int, seed: int = 0, coordinates: bool = False) -> list[tuple[int, str, Molecule]]:
    """``n`` (cid, SMILES, molecule) triples; cids are 1..n."""
    rng = np.random.default_rng(seed)
    out = []
    for cid in range(1, n + 1):
        while True:
            smi = random_smiles(rng)
            try:
                mol = parse_smiles(smi)
                break
            except SmilesError:
                continue
        if coordinates:
            mol = embed_coordinates(mol, seed=seed * 1_000_003 + cid)
        mol.source_cid = cid
        out.append((cid, smi, mol))
    return out
