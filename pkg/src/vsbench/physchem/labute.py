"""Labute approximate surface area per atom.

Each atom is a sphere of radius R_i; a bonded neighbour at the ideal
distance d_ij = R_i + R_j - delta(bond type) removes a spherical cap.
Hydrogens are accounted for the way the reference implementation does:
every atom receives exactly one hydrogen cap whatever its hydrogen count,
and the hydrogen sphere collects one cap per atom into a separate total.
"""

from __future__ import annotations

import math

from ..mol import elements
from ..mol.molecule import BondType, Molecule

_BOND_SHRINK = {BondType.SINGLE: 0.0, BondType.DOUBLE: 0.2, BondType.TRIPLE: 0.3, BondType.AROMATIC: 0.1}


def _cap(ri: float, rj: float, dij: float) -> float:
    return rj * rj - (ri - dij) ** 2 / dij


def labute_contributions(mol: Molecule, include_hs: bool = True) -> tuple[list[float], float]:
    """Per-atom areas (Å²) and the pooled hydrogen area."""
    rad = [elements.BY_NUMBER[a.element].rb0 for a in mol.atoms]
    acc = [0.0] * len(mol.atoms)
    for b in mol.bonds:
        ri, rj = rad[b.begin], rad[b.end]
        dij = max(abs(ri - rj), ri + rj - _BOND_SHRINK[b.type])
        acc[b.begin] += _cap(ri, rj, dij)
        acc[b.end] += _cap(rj, ri, dij)
    rh = elements.BY_NUMBER[1].rb0
    h_acc = 0.0
    if include_hs:
        for i, ri in enumerate(rad):
            dij = max(abs(ri - rh), ri + rh)
            acc[i] += _cap(ri, rh, dij)
            h_acc += _cap(rh, ri, dij)
    areas = [math.pi * r * (4.0 * r - v) for r, v in zip(rad, acc)]
    h_area = math.pi * rh * (4.0 * rh - h_acc)
    return areas, h_area
