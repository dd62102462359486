"""Structure normalization: neutralization, fragments, hydrogens, weight."""

from __future__ import annotations

from . import elements
from .molecule import Atom, Bond, BondType, Molecule

_H_WEIGHT = elements.atomic_weight(1)


def molecular_weight(mol: Molecule) -> float:
    """Average molecular weight in Da, hydrogens (implicit and explicit) included."""
    return sum(elements.atomic_weight(a.element) + a.explicit_h_count * _H_WEIGHT for a in mol.atoms)


def split_fragments(mol: Molecule) -> list[Molecule]:
    comps = mol.components
    if len(comps) <= 1:
        return [mol]
    return [mol.subgraph(c) for c in comps]


def _valence_ok(atom: Atom, valence: int) -> bool:
    vals = elements.allowed_valences(atom.element, atom.formal_charge)
    return vals is None or valence <= max(vals)


def neutralize(mol: Molecule) -> Molecule:
    """Neutralize singly charged atoms that are not part of an adjacent ion pair.

    Cations need at least one hydrogen to lose (quaternary ammonium is kept);
    anions gain hydrogens.  Atoms next to an opposite charge are left alone,
    as is any atom whose neutral form would break valence rules.
    """
    atoms = [a.copy() for a in mol.atoms]
    changed = False
    for i, a in enumerate(mol.atoms):
        q = a.formal_charge
        if q not in (1, -1):
            continue
        nbr_q = [mol.atoms[j].formal_charge for j in mol.neighbors(i)]
        if q == 1 and (mol.total_h(i) == 0 or any(c < 0 for c in nbr_q)):
            continue
        if q == -1 and any(c > 0 for c in nbr_q):
            continue
        if q == 1 and a.explicit_h_count == 0:
            continue  # only hydrogen nodes; leave graph topology untouched
        new = a.copy(formal_charge=0, explicit_h_count=a.explicit_h_count - q)
        if not _valence_ok(new, mol.valence(i) - q):
            continue
        atoms[i] = new
        changed = True
    if not changed:
        return mol
    return mol.copy(atoms=atoms)


def add_hs(mol: Molecule) -> Molecule:
    """Turn implicit hydrogen counts into explicit hydrogen atoms.

    New hydrogens are appended after the existing atoms, in parent order.
    When the molecule has coordinates, each hydrogen is placed 1 Å from its
    parent along a fixed direction; the geometry is only a placeholder.
    """
    atoms = [a.copy(explicit_h_count=0) for a in mol.atoms]
    bonds = [Bond(b.begin, b.end, b.type, b.stereo) for b in mol.bonds]
    for i, a in enumerate(mol.atoms):
        for k in range(a.explicit_h_count):
            xyz = None
            if a.coordinates is not None:
                x, y, z = a.coordinates
                xyz = (x + 1.0, y + 0.1 * k, z)
            atoms.append(Atom(1, coordinates=xyz))
            bonds.append(Bond(i, len(atoms) - 1, BondType.SINGLE))
    return mol.copy(atoms=atoms, bonds=bonds)


def _removable_h(mol: Molecule, i: int) -> bool:
    a = mol.atoms[i]
    if a.element != 1 or a.formal_charge or a.isotope or a.explicit_h_count:
        return False
    nbrs = mol.adjacency[i]
    if len(nbrs) != 1:
        return False
    j, k = nbrs[0]
    return mol.bonds[k].type is BondType.SINGLE and mol.atoms[j].element != 1


def remove_hs(mol: Molecule) -> tuple[Molecule, list[int]]:
    """Fold ordinary hydrogen atoms into their parent's hydrogen count.

    Returns the hydrogen-suppressed molecule and, for each of its atoms, the
    index of the corresponding atom in ``mol``.
    """
    drop = [_removable_h(mol, i) for i in range(len(mol.atoms))]
    if not any(drop):
        return mol, list(range(len(mol.atoms)))
    keep = [i for i in range(len(mol.atoms)) if not drop[i]]
    extra = [0] * len(mol.atoms)
    for i in range(len(mol.atoms)):
        if drop[i]:
            extra[mol.adjacency[i][0][0]] += 1
    sub = mol.subgraph(keep)
    atoms = [a.copy(explicit_h_count=a.explicit_h_count + extra[keep[n]]) for n, a in enumerate(sub.atoms)]
    return sub.copy(atoms=atoms), keep
