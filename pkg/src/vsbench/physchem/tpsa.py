"""Topological polar surface area from Ertl's N/O fragment contributions.

Each nitrogen and oxygen is classified by heavy-neighbour count, attached
hydrogens, formal charge, bond-type counts and three-membered ring
membership.  Environments missing from the fragment table fall back to a
linear estimate in neighbour and hydrogen counts.  Other elements
contribute nothing.
"""

from __future__ import annotations

from ..mol.molecule import BondType, Molecule

# (heavy neighbours, H, charge, single, double, triple, aromatic, in 3-ring) -> area.
# None in a slot means "any value".
_N_TABLE = [
    ((1, 0, 0, None, None, 1, None, None), 23.79),
    ((1, 1, 0, None, 1, None, None, None), 23.85),
    ((1, 2, 0, 1, None, None, None, None), 26.02),
    ((1, 2, 1, None, 1, None, None, None), 25.59),
    ((1, 3, 1, 1, None, None, None, None), 27.64),
    ((2, 0, 0, 1, 1, None, None, None), 12.36),
    ((2, 0, 0, None, 1, 1, None, None), 13.60),
    ((2, 1, 0, 2, None, None, None, True), 21.94),
    ((2, 1, 0, 2, None, None, None, False), 12.03),
    ((2, 0, 1, 1, None, 1, None, None), 4.36),
    ((2, 1, 1, 1, 1, None, None, None), 13.97),
    ((2, 2, 1, 2, None, None, None, None), 16.61),
    ((2, 0, 0, None, None, None, 2, None), 12.89),
    ((2, 1, 0, None, None, None, 2, None), 15.79),
    ((2, 1, 1, None, None, None, 2, None), 14.14),
    ((3, 0, 0, 3, None, None, None, True), 3.01),
    ((3, 0, 0, 3, None, None, None, False), 3.24),
    ((3, 0, 0, 1, 2, None, None, None), 11.68),
    ((3, 0, 1, 2, 1, None, None, None), 3.01),
    ((3, 1, 1, 3, None, None, None, None), 4.44),
    ((3, 0, 0, None, None, None, 3, None), 4.41),
    ((3, 0, 0, 1, None, None, 2, None), 4.93),
    ((3, 0, 0, None, 1, None, 2, None), 8.39),
    ((3, 0, 1, None, None, None, 3, None), 4.10),
    ((3, 0, 1, 1, None, None, 2, None), 3.88),
    ((4, 0, 1, 4, None, None, None, None), 0.00),
]
_O_TABLE = [
    ((1, 0, 0, None, 1, None, None, None), 17.07),
    ((1, 1, 0, 1, None, None, None, None), 20.23),
    ((1, 0, -1, 1, None, None, None, None), 23.06),
    ((2, 0, 0, 2, None, None, None, True), 12.53),
    ((2, 0, 0, 2, None, None, None, False), 9.23),
    ((2, 0, 0, None, None, None, 2, None), 13.14),
]


def _lookup(table, key):
    for pattern, value in table:
        if all(p is None or p == k for p, k in zip(pattern, key)):
            return value
    return None


def tpsa_contributions(mol: Molecule) -> list[float]:
    n = len(mol.atoms)
    out = [0.0] * n
    for i, atom in enumerate(mol.atoms):
        z = atom.element
        if z not in (7, 8):
            continue
        heavy = single = double = triple = arom = 0
        nh = atom.explicit_h_count
        for j, k in mol.adjacency[i]:
            if mol.atoms[j].element == 1:
                nh += 1
                continue
            heavy += 1
            t = mol.bonds[k].type
            if t is BondType.SINGLE:
                single += 1
            elif t is BondType.DOUBLE:
                double += 1
            elif t is BondType.TRIPLE:
                triple += 1
            else:
                arom += 1
        in3 = 3 in mol.atom_ring_sizes[i]
        key = (heavy, nh, atom.formal_charge, single, double, triple, arom, in3)
        value = _lookup(_N_TABLE if z == 7 else _O_TABLE, key)
        if value is None:
            if z == 7:
                value = 30.5 - heavy * 8.2 + nh * 1.5
            else:
                value = 28.5 - heavy * 8.6 + nh * 1.5
            value = max(value, 0.0)
        out[i] = value
    return out
