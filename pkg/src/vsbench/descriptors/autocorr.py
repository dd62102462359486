"""Signed 2D/3D autocorrelations and the 391-dimensional descriptor.

For each distance bin and ordered atom pair (i, j) the magnitude
|P_i * P_j| is added to one of three sign classes: both values >= 0,
mixed signs, or both < 0.  Zeros count as nonnegative.  Topological bins
are path lengths 0..10 in bonds; bin 0 holds only the i == j terms and so
has no mixed class.  Euclidean bins are [1.0 + 0.25k, 1.25 + 0.25k) for
k = 0..19, over pairs i != j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..mol.molecule import Molecule, MoleculeError
from ..physchem.properties import AtomProperties
from ..physchem.scalars import SCALAR_NAMES, molecule_scalars

N_SCALARS = 23
MAX_PATH = 10
AC2D_LEN = 2 + 3 * MAX_PATH  # 32
RADIAL_EDGES = 1.0 + 0.25 * np.arange(21)  # 20 half-open bins over [1, 6)
AC3D_LEN = 3 * (len(RADIAL_EDGES) - 1)  # 60
PROPERTY_NAMES = ("sigma_charge", "v_charge", "is_h", "is_aromatic")
CLASS_NAMES = ("pp", "pn", "nn")
DESCRIPTOR_LEN = N_SCALARS + 4 * AC2D_LEN + 4 * AC3D_LEN  # 391
LAYOUT_VERSION = 1


def _sign_class(p: np.ndarray) -> np.ndarray:
    """Pairwise class matrix: 0 both >= 0, 1 mixed, 2 both < 0."""
    neg = p < 0
    return neg[:, None].astype(np.int64) + neg[None, :].astype(np.int64)


def _stack_props(props) -> np.ndarray:
    return np.atleast_2d(np.asarray(props, dtype=float))


def _ac2d_many(dist: np.ndarray, props: np.ndarray) -> np.ndarray:
    """props: m x n.  Returns m x 32."""
    m, n = props.shape
    out = np.zeros((m, 3 * (MAX_PATH + 1)))
    if n == 0:
        return np.delete(out, 1, axis=1)
    valid = (dist >= 0) & (dist <= MAX_PATH)
    d = dist[valid]
    for p in range(m):
        v = props[p]
        prod = np.abs(np.outer(v, v))[valid]
        cls = _sign_class(v)[valid]
        out[p] = np.bincount(d * 3 + cls, weights=prod, minlength=3 * (MAX_PATH + 1))
    # d = 0 has only same-sign (self) pairs
    return np.delete(out, 1, axis=1)


def _ac3d_many(xyz: np.ndarray, props: np.ndarray) -> np.ndarray:
    m, n = props.shape
    nb = len(RADIAL_EDGES) - 1
    out = np.zeros((m, 3 * nb))
    if n < 2:
        return out
    diff = xyz[:, None, :] - xyz[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    b = np.searchsorted(RADIAL_EDGES, dist, side="right") - 1
    valid = (b >= 0) & (b < nb)
    np.fill_diagonal(valid, False)
    bv = b[valid]
    for p in range(m):
        v = props[p]
        prod = np.abs(np.outer(v, v))[valid]
        cls = _sign_class(v)[valid]
        out[p] = np.bincount(bv * 3 + cls, weights=prod, minlength=3 * nb)
    return out


def signed_autocorrelation_2d(mol: Molecule, prop) -> np.ndarray:
    """32 values: bin 0 (pp, nn), then (pp, pn, nn) for path lengths 1..10."""
    return _ac2d_many(np.asarray(mol.distance_matrix), _stack_props(prop))[0]


def signed_autocorrelation_3d(mol: Molecule, prop) -> np.ndarray:
    """60 values: (pp, pn, nn) for each 0.25 Å bin from 1.0 to 6.0 Å."""
    if not mol.has_coordinates:
        raise MoleculeError("3D autocorrelation needs atom coordinates")
    return _ac3d_many(np.asarray(mol.coordinates, dtype=float), _stack_props(prop))[0]


def descriptor_properties(mol: Molecule, props: AtomProperties) -> np.ndarray:
    """4 x n matrix: sigma charge, V charge, is-hydrogen (+-1), is-aromatic (+-1)."""
    is_h = np.array([1.0 if a.element == 1 else -1.0 for a in mol.atoms])
    arom = np.array([1.0 if a.is_aromatic else -1.0 for a in mol.atoms])
    return np.vstack([props.sigma_charge, props.v_charge, is_h, arom]) if len(mol.atoms) else np.zeros((4, 0))


@dataclass
class DescriptorVector:
    scalars: np.ndarray
    ac2d: np.ndarray
    ac3d: np.ndarray

    def to_array(self) -> np.ndarray:
        return np.concatenate([self.scalars, self.ac2d, self.ac3d])

    def __len__(self) -> int:
        return len(self.scalars) + len(self.ac2d) + len(self.ac3d)


def full_descriptor(mol: Molecule, props: AtomProperties) -> DescriptorVector:
    if not mol.has_coordinates:
        raise MoleculeError("descriptor needs atom coordinates (girth and 3D autocorrelation)")
    sc = molecule_scalars(mol, props)
    scalars = np.array([sc[name] for name in SCALAR_NAMES])
    pm = descriptor_properties(mol, props)
    ac2d = _ac2d_many(np.asarray(mol.distance_matrix), pm).reshape(-1)
    ac3d = _ac3d_many(np.asarray(mol.coordinates, dtype=float), pm).reshape(-1)
    return DescriptorVector(scalars, ac2d, ac3d)


def descriptor_layout() -> list[str]:
    """Column names for all 391 positions, in output order."""
    names = list(SCALAR_NAMES)
    for p in PROPERTY_NAMES:
        names += [f"ac2d_{p}_d0_pp", f"ac2d_{p}_d0_nn"]
        for d in range(1, MAX_PATH + 1):
            names += [f"ac2d_{p}_d{d}_{c}" for c in CLASS_NAMES]
    for p in PROPERTY_NAMES:
        for k in range(len(RADIAL_EDGES) - 1):
            lo, hi = RADIAL_EDGES[k], RADIAL_EDGES[k + 1]
            names += [f"ac3d_{p}_{lo:.2f}-{hi:.2f}_{c}" for c in CLASS_NAMES]
    assert len(names) == DESCRIPTOR_LEN
    return names
