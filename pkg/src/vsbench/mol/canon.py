"""Canonical atom ranking and canonical SMILES."""

from __future__ import annotations

from .molecule import Molecule
from .smiles import write_smiles


def _dense(keys: list) -> list[int]:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(mol: Molecule, ranks: list[int]) -> list[int]:
    adj = mol.adjacency
    bonds = mol.bonds
    n_classes = len(set(ranks))
    while True:
        keys = [
            (ranks[i], tuple(sorted((int(bonds[k].type), ranks[j]) for j, k in adj[i])))
            for i in range(len(ranks))
        ]
        new = _dense(keys)
        n_new = len(set(new))
        if n_new == n_classes:
            return new
        ranks, n_classes = new, n_new


def atom_invariants(mol: Molecule) -> list[tuple]:
    return [
        (
            a.element,
            a.isotope,
            a.formal_charge,
            mol.degree(i),
            mol.total_h(i),
            a.is_aromatic,
            mol.atom_in_ring(i),
        )
        for i, a in enumerate(mol.atoms)
    ]


def canonical_ranks(mol: Molecule) -> list[int]:
    """Distinct rank per atom, independent of input atom order up to symmetry."""
    n = len(mol.atoms)
    if n == 0:
        return []
    ranks = _refine(mol, _dense(atom_invariants(mol)))
    while len(set(ranks)) < n:
        counts: dict[int, int] = {}
        for r in ranks:
            counts[r] = counts.get(r, 0) + 1
        tied = min(r for r, c in counts.items() if c > 1)
        pick = min(i for i in range(n) if ranks[i] == tied)
        ranks = [2 * r + (0 if i == pick else 1) if r == tied else 2 * r for i, r in enumerate(ranks)]
        ranks = _refine(mol, _dense(ranks))
    return ranks


def canonical_form(mol: Molecule) -> str:
    """Canonical SMILES; stereo annotations are not part of the canonical form.

    Bond types are written as stored, so aromatic and Kekule spellings of the
    same ring only coincide after :func:`vsbench.mol.aromatize`.
    """
    if not mol.atoms:
        return ""
    ranks = canonical_ranks(mol)
    if len(mol.components) == 1:
        return write_smiles(mol, ranks)
    frags = []
    for comp in mol.components:
        sub = mol.subgraph(comp)
        frags.append(write_smiles(sub, [ranks[i] for i in comp]))
    return ".".join(sorted(frags))
