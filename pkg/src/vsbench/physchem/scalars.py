"""The 23 whole-molecule scalar descriptors."""

from __future__ import annotations

import numpy as np

from ..mol.molecule import BondType, Molecule
from ..mol.normalize import molecular_weight
from .properties import AtomProperties

SCALAR_NAMES: tuple[str, ...] = (
    "molecular_weight",
    "hbond_donors",
    "hbond_acceptors",
    "logp",
    "total_charge",
    "rotatable_bonds",
    "aromatic_rings",
    "rings",
    "tpsa",
    "girth",
    "bond_girth",
    "largest_ring",
    "smallest_ring",
    "atoms_in_aromatic_fused_rings",
    "atoms_in_fused_rings",
    "sigma_charge_min",
    "sigma_charge_max",
    "sigma_charge_std",
    "sigma_charge_abs_sum",
    "v_charge_min",
    "v_charge_max",
    "v_charge_std",
    "v_charge_abs_sum",
)


class MissingCoordinatesError(ValueError):
    pass


def hbond_donors(mol: Molecule) -> int:
    return sum(1 for i, a in enumerate(mol.atoms) if a.element in (7, 8) and mol.total_h(i) > 0)


def hbond_acceptors(mol: Molecule) -> int:
    return sum(1 for a in mol.atoms if a.element in (7, 8))


def _is_amide_cn(mol: Molecule, c: int, n: int) -> bool:
    if mol.atoms[c].element != 6 or mol.atoms[n].element != 7:
        return False
    for j, k in mol.adjacency[c]:
        if j != n and mol.atoms[j].element == 8 and mol.bonds[k].type is BondType.DOUBLE:
            return True
    return False


def rotatable_bonds(mol: Molecule) -> int:
    """Acyclic single bonds between non-terminal heavy atoms, amide C-N excluded."""
    count = 0
    for b in mol.bonds:
        if b.type is not BondType.SINGLE or b.in_ring:
            continue
        i, j = b.begin, b.end
        if mol.atoms[i].element == 1 or mol.atoms[j].element == 1:
            continue
        if mol.heavy_degree(i) < 2 or mol.heavy_degree(j) < 2:
            continue
        if _is_amide_cn(mol, i, j) or _is_amide_cn(mol, j, i):
            continue
        count += 1
    return count


def _aromatic_ring_flags(mol: Molecule) -> list[bool]:
    return [all(mol.atoms[i].is_aromatic for i in ring) for ring in mol.ring_info]


def fused_ring_atoms(mol: Molecule, aromatic_only: bool = False) -> int:
    """Atoms in rings sharing at least one bond with another ring of the same kind."""
    rings = mol.ring_info
    bond_sets = mol.ring_bond_sets
    keep = _aromatic_ring_flags(mol) if aromatic_only else [True] * len(rings)
    atoms: set[int] = set()
    for a in range(len(rings)):
        if not keep[a]:
            continue
        for b in range(len(rings)):
            if a != b and keep[b] and bond_sets[a] & bond_sets[b]:
                atoms.update(rings[a])
                break
    return len(atoms)


def girth(mol: Molecule) -> float:
    """Largest interatomic distance in Å."""
    if not mol.has_coordinates:
        raise MissingCoordinatesError("girth needs atom coordinates")
    xyz = np.asarray(mol.coordinates, dtype=float)
    if len(xyz) < 2:
        return 0.0
    diff = xyz[:, None, :] - xyz[None, :, :]
    return float(np.sqrt((diff**2).sum(-1)).max())


def bond_girth(mol: Molecule) -> int:
    """Graph diameter in bonds (largest finite topological distance)."""
    if len(mol.atoms) < 2:
        return 0
    return int(np.asarray(mol.distance_matrix).max())


def _stats(values: np.ndarray) -> tuple[float, float, float, float]:
    if len(values) == 0:
        return 0.0, 0.0, 0.0, 0.0
    return float(values.min()), float(values.max()), float(values.std()), float(np.abs(values).sum())


def molecule_scalars(mol: Molecule, props: AtomProperties, require_coordinates: bool = True) -> dict[str, float]:
    """All 23 scalars in :data:`SCALAR_NAMES` order.

    Without coordinates, girth raises unless ``require_coordinates`` is
    False, in which case it is NaN.
    """
    if mol.has_coordinates:
        g = girth(mol)
    elif require_coordinates:
        raise MissingCoordinatesError("girth needs atom coordinates")
    else:
        g = float("nan")
    sizes = [len(r) for r in mol.ring_info]
    values = (
        molecular_weight(mol),
        hbond_donors(mol),
        hbond_acceptors(mol),
        float(props.crippen_logp.sum() + props.crippen_h_logp.sum()),
        mol.net_charge,
        rotatable_bonds(mol),
        sum(_aromatic_ring_flags(mol)),
        len(sizes),
        float(props.tpsa_contrib.sum()),
        g,
        bond_girth(mol),
        max(sizes, default=0),
        min(sizes, default=0),
        fused_ring_atoms(mol, aromatic_only=True),
        fused_ring_atoms(mol),
        *_stats(props.sigma_charge),
        *_stats(props.v_charge),
    )
    return {name: float(v) for name, v in zip(SCALAR_NAMES, values)}
