"""Assignment of alternating single/double bonds to aromatic systems."""

from __future__ import annotations

from typing import TYPE_CHECKING

from . import elements
from .molecule import BondType, MoleculeError

if TYPE_CHECKING:
    from .molecule import Molecule


def _lowest_valences(element: int, charge: int) -> tuple[int, ...]:
    vals = elements.allowed_valences(element, charge)
    if vals:
        return vals
    outer = elements.BY_NUMBER[element].outer_electrons - charge
    return (outer if outer < 4 else 8 - outer,)


def needs_double_bond(mol: "Molecule", i: int) -> bool:
    """Whether aromatic atom ``i`` must take one double bond in a Kekule form."""
    atom = mol.atoms[i]
    base = atom.explicit_h_count
    for _, k in mol.adjacency[i]:
        b = mol.bonds[k]
        base += 1 if b.type is BondType.AROMATIC else int(b.type)
    for v in _lowest_valences(atom.element, atom.formal_charge):
        if v >= base:
            return v - base >= 1
    return False


def _perfect_matching(nodes: list[int], nbrs: dict[int, list[int]]) -> dict[int, int] | None:
    remaining = set(nodes)
    matched: dict[int, int] = {}

    def solve() -> bool:
        if not remaining:
            return True
        best, best_opts = None, None
        for a in sorted(remaining):
            opts = [b for b in nbrs[a] if b in remaining]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = a, opts
                if len(opts) <= 1:
                    break
        if not best_opts:
            return False
        remaining.discard(best)
        for b in best_opts:
            remaining.discard(b)
            matched[best], matched[b] = b, best
            if solve():
                return True
            remaining.add(b)
            del matched[best], matched[b]
        remaining.add(best)
        return False

    return matched if solve() else None


def kekulize_orders(mol: "Molecule") -> list[int]:
    orders = [1 if b.type is BondType.AROMATIC else int(b.type) for b in mol.bonds]
    arom_bonds = [k for k, b in enumerate(mol.bonds) if b.type is BondType.AROMATIC]
    if not arom_bonds:
        return orders
    arom_atoms = sorted({a for k in arom_bonds for a in (mol.bonds[k].begin, mol.bonds[k].end)}
                        | {i for i, a in enumerate(mol.atoms) if a.is_aromatic})
    needy = [i for i in arom_atoms if needs_double_bond(mol, i)]
    needy_set = set(needy)
    nbrs: dict[int, list[int]] = {i: [] for i in needy}
    for k in arom_bonds:
        b = mol.bonds[k]
        if b.begin in needy_set and b.end in needy_set:
            nbrs[b.begin].append(b.end)
            nbrs[b.end].append(b.begin)
    for i in needy:
        nbrs[i].sort()
    matching = _perfect_matching(needy, nbrs)
    if matching is None:
        raise MoleculeError("cannot kekulize aromatic system")
    for k in arom_bonds:
        b = mol.bonds[k]
        if matching.get(b.begin) == b.end:
            orders[k] = 2
    return orders


def kekulize(mol: "Molecule") -> "Molecule":
    """Copy of ``mol`` with aromatic bonds replaced by single/double bonds."""
    from .molecule import Bond

    orders = mol.kekule_orders
    bonds = [Bond(b.begin, b.end, BondType(orders[k]), b.stereo) for k, b in enumerate(mol.bonds)]
    atoms = [a.copy(is_aromatic=False) for a in mol.atoms]
    return mol.copy(atoms=atoms, bonds=bonds)
