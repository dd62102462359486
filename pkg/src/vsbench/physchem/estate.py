"""Kier-Hall electrotopological state indices.

Intrinsic state I_i = ((2/L)^2 * dv + 1) / d with L the principal quantum
number, dv the valence electrons minus attached hydrogens and d the number
of graph neighbours.  The E-state adds the perturbation
sum_j (I_i - I_j) / (r_ij + 1)^2 over atoms in the same component, r_ij
being the topological distance.
"""

from __future__ import annotations

import numpy as np

from ..mol import elements
from ..mol.molecule import Molecule

_PERIOD_ENDS = (2, 10, 18, 36, 54, 86)


def principal_quantum_number(z: int) -> int:
    for n, end in enumerate(_PERIOD_ENDS, start=1):
        if z <= end:
            return n
    return 7


def intrinsic_states(mol: Molecule) -> np.ndarray:
    out = np.zeros(len(mol.atoms))
    for i, a in enumerate(mol.atoms):
        d = mol.degree(i)
        if d == 0:
            continue
        dv = elements.BY_NUMBER[a.element].outer_electrons - mol.total_h(i)
        n = principal_quantum_number(a.element)
        out[i] = (4.0 / (n * n) * dv + 1.0) / d
    return out


def estate_indices(mol: Molecule) -> np.ndarray:
    states = intrinsic_states(mol)
    dist = np.asarray(mol.distance_matrix, dtype=float)
    weight = np.where(dist > 0, 1.0 / (np.abs(dist) + 1.0) ** 2, 0.0)
    diff = states[:, None] - states[None, :]
    return states + (diff * weight).sum(axis=1)
