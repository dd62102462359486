"""Table-driven valence charges by electronegativity equalization.

Charges minimize  sum_i (chi_i q_i + eta_i q_i^2 / 2)
                + (kappa / 2) sum_bonds (q_i - q_j)^2
subject to sum_i q_i = net formal charge, with one node per atom and per
implicit hydrogen.  Hydrogen charges are folded into their parent so that
heavy-atom values sum to the net charge.  Per-element (chi, eta) and the
bond coupling kappa come from a versioned parameter file; for exact
agreement with an external charge model use the property-file provider.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from ..mol import elements
from ..mol.molecule import Molecule


class VChargeError(ValueError):
    pass


@dataclass(frozen=True)
class VChargeTable:
    chi: dict[int, float]
    eta: dict[int, float]
    bond_coupling: float


def parse_table(text: str) -> VChargeTable:
    chi, eta = {}, {}
    kappa = None
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] == "@bond_coupling":
            kappa = float(fields[1])
            continue
        z = elements.atomic_number(fields[0])
        chi[z], eta[z] = float(fields[1]), float(fields[2])
    if kappa is None:
        raise ValueError("parameter table lacks @bond_coupling")
    return VChargeTable(chi, eta, kappa)


@lru_cache(maxsize=None)
def load_table(path: str | None = None) -> VChargeTable:
    if path is None:
        text = resources.files("vsbench.data").joinpath("vcharge.txt").read_text()
    else:
        text = Path(path).read_text()
    return parse_table(text)


def v_charges(mol: Molecule, table: VChargeTable | None = None) -> np.ndarray:
    table = table or load_table()
    n = len(mol.atoms)
    owner = list(range(n))
    z = [a.element for a in mol.atoms]
    edges = [(b.begin, b.end) for b in mol.bonds]
    for i, a in enumerate(mol.atoms):
        for _ in range(a.explicit_h_count):
            owner.append(i)
            z.append(1)
            edges.append((i, len(z) - 1))
    m = len(z)
    for el in set(z):
        if el not in table.chi:
            raise VChargeError(f"no V-charge parameters for element {elements.symbol(el)}")
    a = np.zeros((m + 1, m + 1))
    rhs = np.zeros(m + 1)
    for k, el in enumerate(z):
        a[k, k] = table.eta[el]
        rhs[k] = -table.chi[el]
    kappa = table.bond_coupling
    for i, j in edges:
        a[i, i] += kappa
        a[j, j] += kappa
        a[i, j] -= kappa
        a[j, i] -= kappa
    # Lagrange multiplier row enforces total charge
    a[:m, m] = -1.0
    a[m, :m] = 1.0
    rhs[m] = mol.net_charge
    q = np.linalg.solve(a, rhs)[:m]
    out = np.zeros(n)
    np.add.at(out, owner, q)
    return out
