"""Molecular graph data model.

Molecules are treated as immutable values: every structure-changing
operation in the package builds a new :class:`Molecule`.  Derived data
(adjacency, rings, Kekule bond orders, conjugation) is computed lazily and
cached on the instance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property

from . import elements


class MoleculeError(ValueError):
    """Structural problem with a molecule (valence, aromaticity, ...)."""


class BondType(enum.IntEnum):
    SINGLE = 1
    DOUBLE = 2
    TRIPLE = 3
    AROMATIC = 4

    @property
    def order(self) -> float:
        return 1.5 if self is BondType.AROMATIC else float(self.value)


@dataclass(slots=True)
class Atom:
    element: int
    formal_charge: int = 0
    explicit_h_count: int = 0
    is_aromatic: bool = False
    coordinates: tuple[float, float, float] | None = None
    isotope: int = 0
    chirality: str | None = None
    computed_props: dict[str, float] = field(default_factory=dict)

    @property
    def symbol(self) -> str:
        return elements.symbol(self.element)

    def copy(self, **changes) -> "Atom":
        new = replace(self, **changes)
        if "computed_props" not in changes:
            new.computed_props = dict(self.computed_props)
        return new


@dataclass(slots=True)
class Bond:
    begin: int
    end: int
    type: BondType = BondType.SINGLE
    stereo: str | None = None
    in_ring: bool = False
    is_conjugated: bool = False

    @property
    def order(self) -> float:
        return self.type.order

    def other(self, idx: int) -> int:
        return self.end if idx == self.begin else self.begin


class Molecule:
    """Simple undirected attributed graph of atoms and bonds."""

    def __init__(
        self,
        atoms: list[Atom],
        bonds: list[Bond],
        name: str | None = None,
        source_cid: int | None = None,
    ):
        self.atoms = list(atoms)
        self.bonds = list(bonds)
        self.name = name
        self.source_cid = source_cid
        n = len(self.atoms)
        seen = set()
        for b in self.bonds:
            if b.begin == b.end:
                raise MoleculeError(f"bond from atom {b.begin} to itself")
            if not (0 <= b.begin < n and 0 <= b.end < n):
                raise MoleculeError(f"bond ({b.begin}, {b.end}) references a missing atom")
            key = (min(b.begin, b.end), max(b.begin, b.end))
            if key in seen:
                raise MoleculeError(f"duplicate bond between atoms {key[0]} and {key[1]}")
            seen.add(key)
        has_xyz = [a.coordinates is not None for a in self.atoms]
        if any(has_xyz) and not all(has_xyz):
            raise MoleculeError("coordinates must be given for all atoms or none")
        self._annotate_bonds()

    def __repr__(self) -> str:
        return f"Molecule(atoms={len(self.atoms)}, bonds={len(self.bonds)}, name={self.name!r})"

    def __len__(self) -> int:
        return len(self.atoms)

    # graph structure -------------------------------------------------

    @cached_property
    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per atom list of (neighbour index, bond index)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.atoms]
        for k, b in enumerate(self.bonds):
            adj[b.begin].append((b.end, k))
            adj[b.end].append((b.begin, k))
        return adj

    @cached_property
    def _bond_lookup(self) -> dict[tuple[int, int], int]:
        out = {}
        for k, b in enumerate(self.bonds):
            out[(b.begin, b.end)] = k
            out[(b.end, b.begin)] = k
        return out

    def bond_index(self, i: int, j: int) -> int | None:
        return self._bond_lookup.get((i, j))

    def bond_between(self, i: int, j: int) -> Bond | None:
        k = self._bond_lookup.get((i, j))
        return None if k is None else self.bonds[k]

    def neighbors(self, i: int) -> list[int]:
        return [j for j, _ in self.adjacency[i]]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    @cached_property
    def _h_neighbors(self) -> list[int]:
        return [sum(1 for j, _ in nbrs if self.atoms[j].element == 1) for nbrs in self.adjacency]

    def total_h(self, i: int) -> int:
        """Hydrogens on atom ``i``: implicit count plus explicit hydrogen nodes."""
        return self.atoms[i].explicit_h_count + self._h_neighbors[i]

    def heavy_degree(self, i: int) -> int:
        return self.degree(i) - self._h_neighbors[i]

    def total_degree(self, i: int) -> int:
        return self.degree(i) + self.atoms[i].explicit_h_count

    @property
    def has_coordinates(self) -> bool:
        return bool(self.atoms) and self.atoms[0].coordinates is not None

    @cached_property
    def coordinates(self):
        import numpy as np

        if not self.has_coordinates:
            raise MoleculeError("molecule has no 3D coordinates")
        return np.array([a.coordinates for a in self.atoms], dtype=float)

    @property
    def net_charge(self) -> int:
        return sum(a.formal_charge for a in self.atoms)

    # rings ------------------------------------------------------------

    @cached_property
    def ring_info(self) -> list[tuple[int, ...]]:
        """Smallest set of smallest rings, each an ordered atom cycle."""
        from .rings import sssr

        return sssr(len(self.atoms), self.adjacency)

    @cached_property
    def ring_bond_sets(self) -> list[frozenset[int]]:
        out = []
        for ring in self.ring_info:
            out.append(frozenset(
                self._bond_lookup[(ring[k], ring[(k + 1) % len(ring)])] for k in range(len(ring))
            ))
        return out

    @cached_property
    def atom_ring_sizes(self) -> list[list[int]]:
        sizes: list[list[int]] = [[] for _ in self.atoms]
        for ring in self.ring_info:
            for a in ring:
                sizes[a].append(len(ring))
        return sizes

    def atom_in_ring(self, i: int) -> bool:
        return bool(self.atom_ring_sizes[i])

    @cached_property
    def ring_bond_count(self) -> list[int]:
        out = [0] * len(self.atoms)
        for b in self.bonds:
            if b.in_ring:
                out[b.begin] += 1
                out[b.end] += 1
        return out

    def _annotate_bonds(self) -> None:
        in_ring = set()
        for bset in self.ring_bond_sets:
            in_ring |= bset
        for k, b in enumerate(self.bonds):
            b.in_ring = k in in_ring
        from .perception import mark_conjugation

        mark_conjugation(self)

    # valence ----------------------------------------------------------

    @cached_property
    def kekule_orders(self) -> list[int]:
        """Integer bond orders with aromatic bonds resolved to a Kekule structure."""
        from .kekule import kekulize_orders

        return kekulize_orders(self)

    def valence(self, i: int) -> int:
        """Total valence from the Kekule structure, hydrogens included."""
        orders = self.kekule_orders
        return sum(orders[k] for _, k in self.adjacency[i]) + self.atoms[i].explicit_h_count

    # copying ----------------------------------------------------------

    def copy(self, atoms: list[Atom] | None = None, bonds: list[Bond] | None = None, **meta) -> "Molecule":
        atoms = [a.copy() for a in self.atoms] if atoms is None else atoms
        bonds = [Bond(b.begin, b.end, b.type, b.stereo) for b in self.bonds] if bonds is None else bonds
        return Molecule(
            atoms,
            bonds,
            name=meta.get("name", self.name),
            source_cid=meta.get("source_cid", self.source_cid),
        )

    def subgraph(self, atom_indices) -> "Molecule":
        """Induced subgraph on ``atom_indices`` (kept in the given order)."""
        idx = list(atom_indices)
        remap = {old: new for new, old in enumerate(idx)}
        atoms = [self.atoms[i].copy() for i in idx]
        bonds = [
            Bond(remap[b.begin], remap[b.end], b.type, b.stereo)
            for b in self.bonds
            if b.begin in remap and b.end in remap
        ]
        return Molecule(atoms, bonds, name=self.name, source_cid=self.source_cid)

    def renumber(self, order) -> "Molecule":
        """Return a copy with atoms permuted: new atom k is old atom ``order[k]``."""
        return self.subgraph(order)

    @cached_property
    def components(self) -> list[list[int]]:
        seen = [False] * len(self.atoms)
        comps = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                a = stack.pop()
                comp.append(a)
                for j, _ in self.adjacency[a]:
                    if not seen[j]:
                        seen[j] = True
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    @cached_property
    def distance_matrix(self):
        """All-pairs shortest path lengths in bonds (-1 for disconnected pairs)."""
        import numpy as np
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import shortest_path

        n = len(self.atoms)
        if n == 0:
            return np.zeros((0, 0), dtype=int)
        rows = [b.begin for b in self.bonds] + [b.end for b in self.bonds]
        cols = [b.end for b in self.bonds] + [b.begin for b in self.bonds]
        g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        d = shortest_path(g, unweighted=True, directed=False)
        d[np.isinf(d)] = -1
        return d.astype(int)
