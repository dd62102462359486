"""Gasteiger-Marsili partial charges (PEOE).

Orbital electronegativity is chi = a + b*q + c*q**2 with (a, b, c) chosen by
element and hybridization.  Charge flows along every bond in proportion to
the electronegativity difference, divided by the cation electronegativity
of the less electronegative partner; the flow is damped by 1/2 per
iteration.  Implicit hydrogens are carried as one pooled charge per heavy
atom.
"""

from __future__ import annotations

from ..mol.molecule import Molecule
from ..mol.perception import Hybridization, hybridization

# (element, mode) -> (a, b, c)
PARAMS: dict[tuple[str, str], tuple[float, float, float]] = {
    ("H", "*"): (7.17, 6.24, -0.56),
    ("C", "sp3"): (7.98, 9.18, 1.88),
    ("C", "sp2"): (8.79, 9.32, 1.51),
    ("C", "sp"): (10.39, 9.45, 0.73),
    ("N", "sp3"): (11.54, 10.82, 1.36),
    ("N", "sp2"): (12.87, 11.15, 0.85),
    ("N", "sp"): (15.68, 11.7, -0.27),
    ("O", "sp3"): (14.18, 12.92, 1.39),
    ("O", "sp2"): (17.07, 13.79, 0.47),
    ("F", "sp3"): (14.66, 13.85, 2.31),
    ("Cl", "sp3"): (11.00, 9.69, 1.35),
    ("Br", "sp3"): (10.08, 8.47, 1.16),
    ("I", "sp3"): (9.90, 7.96, 0.96),
    ("S", "sp3"): (10.14, 9.13, 1.38),
    ("S", "so"): (10.14, 9.13, 1.38),
    ("S", "so2"): (12.00, 10.81, 1.20),
    ("S", "sp2"): (10.88, 9.49, 1.33),
    ("P", "sp3"): (8.90, 8.24, 0.96),
    ("P", "sp2"): (9.665, 8.530, 0.735),
    ("Si", "sp3"): (7.300, 6.567, 0.657),
    ("Si", "sp2"): (7.905, 6.748, 0.443),
    ("Si", "sp"): (9.065, 7.027, -0.002),
    ("B", "sp3"): (5.980, 6.820, 1.605),
    ("B", "sp2"): (6.420, 6.807, 1.322),
    ("Be", "sp3"): (3.845, 6.755, 3.165),
    ("Be", "sp2"): (4.005, 6.725, 3.035),
    ("Mg", "sp2"): (3.565, 5.572, 2.197),
    ("Mg", "sp3"): (3.300, 5.587, 2.447),
    ("Mg", "sp"): (4.040, 5.472, 1.823),
    ("Al", "sp3"): (5.375, 4.953, 0.867),
    ("Al", "sp2"): (5.795, 5.020, 0.695),
}
H_CATION = 20.02  # electronegativity of H+
N_ITER = 12
DAMP = 0.5

_MODES = {Hybridization.SP3: "sp3", Hybridization.SP2: "sp2", Hybridization.SP: "sp"}


class GasteigerError(ValueError):
    pass


def _mode(mol: Molecule, i: int) -> str:
    atom = mol.atoms[i]
    mode = _MODES.get(hybridization(mol, i))
    if mode is not None:
        return mode
    if atom.element == 1:
        return "*"
    if atom.element == 16:
        n_o = sum(1 for j in mol.neighbors(i) if mol.atoms[j].element == 8)
        return "so2" if n_o == 2 else "so" if n_o == 1 else "sp3"
    return hybridization(mol, i).value


def _initial_charges(mol: Molecule) -> list[float]:
    """Spread formal charges over same-element atoms two conjugated bonds away."""
    charges = [0.0] * len(mol.atoms)
    adj = mol.adjacency
    for i, atom in enumerate(mol.atoms):
        formal = float(atom.formal_charge)
        if formal == 0 or charges[i] != 0:
            continue
        marker = [i]
        for a, k1 in adj[i]:
            if not mol.bonds[k1].is_conjugated:
                continue
            for y, k2 in adj[a]:
                if k2 == k1 or not mol.bonds[k2].is_conjugated:
                    continue
                if mol.atoms[y].element == atom.element:
                    formal += mol.atoms[y].formal_charge
                    marker.append(y)
        for m in marker:
            charges[m] = formal / len(marker)
    return charges


def gasteiger_charges(mol: Molecule, n_iter: int = N_ITER) -> tuple[list[float], list[float]]:
    """Per-atom charges and pooled implicit-hydrogen charge per atom.

    Raises:
        GasteigerError: for an element/hybridization without parameters.
    """
    n = len(mol.atoms)
    params = []
    ion = []
    for i, atom in enumerate(mol.atoms):
        key = (atom.symbol, _mode(mol, i))
        p = PARAMS.get(key)
        if p is None:
            raise GasteigerError(f"no Gasteiger parameters for element {key[0]} ({key[1]})")
        params.append(p)
        ion.append(H_CATION if atom.element == 1 else p[0] + p[1] + p[2])
    ha, hb, hc = PARAMS[("H", "*")]
    nh = [a.explicit_h_count for a in mol.atoms]
    adj = [[j for j, _ in nbrs] for nbrs in mol.adjacency]
    q = _initial_charges(mol)
    qh = [0.0] * n
    damp = DAMP
    for _ in range(n_iter):
        energ = [a + q[i] * (b + c * q[i]) for i, (a, b, c) in enumerate(params)]
        for i in range(n):
            ei, ioni = energ[i], ion[i]
            dq = 0.0
            for j in adj[i]:
                dx = energ[j] - ei
                if dx < 0.0:
                    dq += dx / ion[j]
                else:
                    dq += dx / ioni
            if nh[i]:
                qhs = qh[i] / nh[i]
                dx = ha + qhs * (hb + hc * qhs) - ei
                dqh = dx / (H_CATION if dx < 0.0 else ioni)
                dq += nh[i] * dqh
                qh[i] -= nh[i] * dqh * damp
            q[i] += damp * dq
        damp *= DAMP
    return q, qh
