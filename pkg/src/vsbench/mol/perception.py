"""Conjugation, hybridization and aromaticity perception."""

from __future__ import annotations

import enum
from typing import TYPE_CHECKING

from . import elements
from .molecule import Bond, BondType

if TYPE_CHECKING:
    from .molecule import Molecule


class Hybridization(enum.Enum):
    S = "s"
    SP = "sp"
    SP2 = "sp2"
    SP3 = "sp3"
    SP3D = "sp3d"
    SP3D2 = "sp3d2"
    UNSPECIFIED = "unspecified"


def _conjugation_candidate(mol: "Molecule", i: int) -> bool:
    z = mol.atoms[i].element
    outer = elements.BY_NUMBER[z].outer_electrons
    if outer == 7 or (z > 10 and outer < 3):
        return False
    return z <= 10 or (outer != 5 and outer != 6) or (outer == 6 and mol.total_degree(i) < 2)


def mark_conjugation(mol: "Molecule") -> None:
    """Flag bonds that are aromatic or part of an alternating pi path."""
    for b in mol.bonds:
        b.is_conjugated = b.type is BondType.AROMATIC
    adj = mol.adjacency
    for i in range(len(mol.atoms)):
        if not _conjugation_candidate(mol, i):
            continue
        sbo = mol.total_degree(i)
        if sbo < 2 or sbo > 3:
            continue
        for _, k1 in adj[i]:
            b1 = mol.bonds[k1]
            if b1.type is BondType.SINGLE:
                continue
            for j, k2 in adj[i]:
                if k2 == k1:
                    continue
                if mol.total_degree(j) > 3:
                    continue
                if _conjugation_candidate(mol, j):
                    b1.is_conjugated = True
                    mol.bonds[k2].is_conjugated = True


def radical_electrons(mol: "Molecule", i: int) -> int:
    atom = mol.atoms[i]
    vals = elements.allowed_valences(atom.element, atom.formal_charge)
    if not vals:
        return 0
    v = mol.valence(i)
    lowest = min(vals)
    return lowest - v if v < lowest else 0


def bonds_plus_lone_pairs(mol: "Molecule", i: int) -> int:
    atom = mol.atoms[i]
    deg = mol.total_degree(i)
    if atom.element <= 1:
        return deg
    outer = elements.BY_NUMBER[atom.element].outer_electrons
    valence = mol.valence(i)
    chg = atom.formal_charge
    free = outer - (valence + chg)
    if valence + outer - chg < 8:
        rad = radical_electrons(mol, i)
        return deg + (free - rad) // 2 + rad
    return deg + free // 2


def hybridization(mol: "Molecule", i: int) -> Hybridization:
    atom = mol.atoms[i]
    norbs = bonds_plus_lone_pairs(mol, i) if atom.element < 89 else mol.total_degree(i)
    if norbs <= 1:
        return Hybridization.S
    if norbs == 2:
        return Hybridization.SP
    if norbs == 3:
        return Hybridization.SP2
    if norbs == 4:
        conj = any(mol.bonds[k].is_conjugated for _, k in mol.adjacency[i])
        if mol.degree(i) < 4 and conj:
            return Hybridization.SP2
        return Hybridization.SP3
    if norbs == 5:
        return Hybridization.SP3D
    if norbs == 6:
        return Hybridization.SP3D2
    return Hybridization.UNSPECIFIED


# --- aromaticity -------------------------------------------------------

_AROMATIC_ELEMENTS = {5, 6, 7, 8, 15, 16, 33, 34, 52}


def _pi_electrons(mol: "Molecule", orders: list[int], i: int) -> int | None:
    """Pi electrons atom ``i`` donates to a ring, or None if it cannot be aromatic."""
    atom = mol.atoms[i]
    if atom.element not in _AROMATIC_ELEMENTS:
        return None
    doubles = []
    for j, k in mol.adjacency[i]:
        if orders[k] == 3:
            return None
        if orders[k] == 2:
            doubles.append((j, k))
    if len(doubles) > 1:
        return None
    z, chg = atom.element, atom.formal_charge
    tdeg = mol.total_degree(i)
    if doubles:
        if tdeg > 3:
            return None
        j, k = doubles[0]
        if mol.bonds[k].in_ring:
            return 1
        if z == 6 and mol.atoms[j].element in (7, 8, 16):
            return 0
        return None
    if z == 6:
        if chg == -1 and tdeg == 3:
            return 2
        if chg == 1 and tdeg == 3:
            return 0
        return None
    if z in (7, 15, 33):
        if chg == 0 and tdeg == 3:
            return 2
        if chg == -1 and tdeg == 2:
            return 2
        return None
    if z in (8, 16, 34, 52):
        if chg == 0 and tdeg == 2:
            return 2
        return None
    if z == 5 and chg == 0 and tdeg == 3:
        return 0
    return None


def aromatic_rings(mol: "Molecule") -> list[int]:
    """Indices into ``mol.ring_info`` of rings that satisfy the 4n+2 rule."""
    orders = mol.kekule_orders
    out = []
    for r, ring in enumerate(mol.ring_info):
        total = 0
        for i in ring:
            e = _pi_electrons(mol, orders, i)
            if e is None:
                break
            total += e
        else:
            if total % 4 == 2:
                out.append(r)
    return out


def aromatize(mol: "Molecule") -> "Molecule":
    """Rewrite Hueckel-aromatic rings with aromatic bonds and atoms.

    Input aromatic bonds are first resolved to a Kekule structure, so the
    result does not depend on whether the input was written aromatic or
    kekulized.  Rings that fail the rule keep alternating bonds.
    """
    from .molecule import Molecule

    orders = mol.kekule_orders
    bonds = [Bond(b.begin, b.end, BondType(orders[k]), b.stereo) for k, b in enumerate(mol.bonds)]
    atoms = [a.copy(is_aromatic=False) for a in mol.atoms]
    kek = Molecule(atoms, bonds, name=mol.name, source_cid=mol.source_cid)
    arom = aromatic_rings(kek)
    if not arom:
        return kek
    arom_bonds = set()
    for r in arom:
        arom_bonds |= kek.ring_bond_sets[r]
        for i in kek.ring_info[r]:
            atoms[i].is_aromatic = True
    new_bonds = [
        Bond(b.begin, b.end, BondType.AROMATIC if k in arom_bonds else b.type, b.stereo)
        for k, b in enumerate(bonds)
    ]
    return Molecule([a.copy() for a in atoms], new_bonds, name=mol.name, source_cid=mol.source_cid)
