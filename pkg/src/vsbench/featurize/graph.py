"""Graph tensors: 28 node features, 7 bond features, bond or radius edges."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..mol import elements
from ..mol.molecule import BondType, Molecule, MoleculeError
from ..physchem.properties import AtomProperties, atom_properties

log = logging.getLogger(__name__)

NODE_DIM = 28
EDGE_DIM = 7
CUTOFF = 6.0

ELEMENT_SLOTS = {1: 0, 6: 1, 7: 2, 8: 3, 9: 4, 14: 5, 15: 6, 16: 7, 17: 8, 35: 9, 53: 10}
OTHER_SLOT = 11
DEGREE_OFFSET = 12
NODE_FEATURE_NAMES = (
    "is_H", "is_C", "is_N", "is_O", "is_F", "is_Si", "is_P", "is_S", "is_Cl", "is_Br", "is_I", "is_other",
    "degree_1", "degree_2", "degree_3", "degree_4",
    "formal_charge", "in_ring", "aromatic", "explicit_valence", "atomic_mass",
    "gasteiger_charge", "gasteiger_h_charge", "crippen_logp", "crippen_mr",
    "tpsa_contrib", "labute_asa_contrib", "estate_index",
)
EDGE_FEATURE_NAMES = ("aromatic", "conjugated", "in_ring", "order_1", "order_1_5", "order_2", "order_3")
_ORDER_SLOT = {BondType.SINGLE: 3, BondType.AROMATIC: 4, BondType.DOUBLE: 5, BondType.TRIPLE: 6}


@dataclass
class GraphTensor:
    node_features: np.ndarray
    edges: np.ndarray  # E x 2 int, both directions stored
    edge_features: np.ndarray | None = None
    positions: np.ndarray | None = None

    @property
    def n_nodes(self) -> int:
        return self.node_features.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]


def node_feature_vector(mol: Molecule, i: int, props: AtomProperties) -> np.ndarray:
    atom = mol.atoms[i]
    v = np.zeros(NODE_DIM)
    v[ELEMENT_SLOTS.get(atom.element, OTHER_SLOT)] = 1.0
    deg = mol.total_degree(i)
    if 1 <= deg <= 4:
        v[DEGREE_OFFSET + deg - 1] = 1.0
    else:
        log.info("atom %d has degree %d; degree block left empty", i, deg)
    v[16] = atom.formal_charge
    v[17] = float(mol.atom_in_ring(i))
    v[18] = float(atom.is_aromatic)
    v[19] = mol.valence(i)
    v[20] = elements.atomic_weight(atom.element)
    v[21] = props.gasteiger_charge[i]
    v[22] = props.gasteiger_h_charge[i]
    v[23] = props.crippen_logp[i]
    v[24] = props.crippen_mr[i]
    v[25] = props.tpsa_contrib[i]
    v[26] = props.labute_asa_contrib[i]
    v[27] = props.estate_index[i]
    return v


def node_features(mol: Molecule, props: AtomProperties | None = None) -> np.ndarray:
    props = props if props is not None else atom_properties(mol)
    out = np.zeros((len(mol.atoms), NODE_DIM))
    for i in range(len(mol.atoms)):
        out[i] = node_feature_vector(mol, i, props)
    return out


def edge_feature_vector(mol: Molecule, k: int) -> np.ndarray:
    b = mol.bonds[k]
    v = np.zeros(EDGE_DIM)
    v[0] = float(b.type is BondType.AROMATIC)
    v[1] = float(b.is_conjugated)
    v[2] = float(b.in_ring)
    v[_ORDER_SLOT[b.type]] = 1.0
    return v


def build_2d_graph(mol: Molecule, props: AtomProperties | None = None) -> GraphTensor:
    """Bond topology; each bond appears as two directed edges (i, j), (j, i)."""
    nf = node_features(mol, props)
    edges = np.zeros((2 * len(mol.bonds), 2), dtype=np.int64)
    ef = np.zeros((2 * len(mol.bonds), EDGE_DIM))
    for k, b in enumerate(mol.bonds):
        f = edge_feature_vector(mol, k)
        edges[2 * k] = (b.begin, b.end)
        edges[2 * k + 1] = (b.end, b.begin)
        ef[2 * k] = f
        ef[2 * k + 1] = f
    return GraphTensor(nf, edges, ef, None)


def radius_edges(positions: np.ndarray, cutoff: float = CUTOFF) -> np.ndarray:
    """Ordered pairs (i, j), i != j, with Euclidean distance strictly below ``cutoff``."""
    pos = np.asarray(positions, dtype=float)
    if len(pos) < 2:
        return np.zeros((0, 2), dtype=np.int64)
    diff = pos[:, None, :] - pos[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    close = d2 < cutoff * cutoff
    np.fill_diagonal(close, False)
    i, j = np.nonzero(close)
    return np.stack([i, j], axis=1).astype(np.int64)


def build_3d_graph(mol: Molecule, props: AtomProperties | None = None, cutoff: float = CUTOFF) -> GraphTensor:
    if not mol.has_coordinates:
        raise MoleculeError("3D graph needs atom coordinates")
    pos = np.array(mol.coordinates, dtype=float)
    return GraphTensor(node_features(mol, props), radius_edges(pos, cutoff), None, pos)
