"""Wildman-Crippen atom-typed logP and molar refractivity contributions.

Each atom receives the values of the first atom type in table order whose
SMARTS matches with the atom as query atom 0.  Hydrogen types are written
as ``[#1]X...`` patterns; with hydrogens folded into their parent, such a
pattern becomes a query anchored on the parent with a minimum H count, so
every hydrogen of that parent shares one type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..mol.molecule import Molecule
from ..smarts.matcher import match_context, matches_at
from ..smarts.parser import Pattern, compile_pattern


@dataclass(frozen=True)
class AtomType:
    label: str
    smarts: str
    logp: float
    mr: float
    pattern: Pattern | None  # None for the bare hydrogen fallback


@dataclass(frozen=True)
class CrippenTable:
    heavy: tuple[AtomType, ...]
    hydrogen: tuple[AtomType, ...]
    h_fallback: AtomType


def parse_table(text: str) -> CrippenTable:
    heavy, hydrogen = [], []
    fallback = None
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        label, smarts, logp, mr = line.split("\t")[:4]
        if smarts == "[#1]":
            fallback = AtomType(label, smarts, float(logp), float(mr), None)
            continue
        t = AtomType(label, smarts, float(logp), float(mr), compile_pattern(smarts))
        (hydrogen if smarts.startswith("[#1]") else heavy).append(t)
    if fallback is None:
        raise ValueError("atom-type table lacks a bare [#1] fallback row")
    return CrippenTable(tuple(heavy), tuple(hydrogen), fallback)


@lru_cache(maxsize=None)
def load_table(path: str | None = None) -> CrippenTable:
    if path is None:
        text = resources.files("vsbench.data").joinpath("crippen.txt").read_text()
    else:
        text = Path(path).read_text()
    return parse_table(text)


def _first(ctx, types, atom: int) -> AtomType | None:
    for t in types:
        if matches_at(ctx, t.pattern, atom):
            return t
    return None


def crippen_contributions(mol: Molecule, table: CrippenTable | None = None):
    """Per-atom ``(logp, mr)`` lists plus the summed implicit-hydrogen totals.

    Returns ``(logp, mr, h_logp, h_mr)`` where ``h_logp[i]`` / ``h_mr[i]``
    hold the contribution of the implicit hydrogens carried by atom ``i``.
    Hydrogen atoms present as nodes get their own entries in ``logp``/``mr``.
    """
    table = table or load_table()
    ctx = match_context(mol)
    n = len(mol.atoms)
    logp, mr = [0.0] * n, [0.0] * n
    h_logp, h_mr = [0.0] * n, [0.0] * n
    h_type: dict[int, AtomType] = {}
    for v, orig in enumerate(ctx.index_map):
        t = _first(ctx, table.heavy, v)
        if t is not None:
            logp[orig], mr[orig] = t.logp, t.mr
        if ctx.total_h[v]:
            ht = _first(ctx, table.hydrogen, v) or table.h_fallback
            h_type[orig] = ht
            nh = mol.atoms[orig].explicit_h_count
            h_logp[orig], h_mr[orig] = nh * ht.logp, nh * ht.mr
    kept = set(ctx.index_map)
    for i, atom in enumerate(mol.atoms):
        if i in kept:
            continue
        # hydrogen node folded into its parent for matching
        parent = mol.adjacency[i][0][0]
        ht = h_type.get(parent, table.h_fallback)
        logp[i], mr[i] = ht.logp, ht.mr
    for i, atom in enumerate(mol.atoms):
        if atom.element == 1 and i in kept:
            logp[i], mr[i] = table.h_fallback.logp, table.h_fallback.mr
    return logp, mr, h_logp, h_mr


def crippen_logp_mr(mol: Molecule, table: CrippenTable | None = None) -> tuple[float, float]:
    """Molecular logP and MR including every hydrogen."""
    logp, mr, h_logp, h_mr = crippen_contributions(mol, table)
    return sum(logp) + sum(h_logp), sum(mr) + sum(h_mr)
