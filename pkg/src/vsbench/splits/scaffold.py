"""Bemis-Murcko frameworks and scaffold-disjoint train/valid/test splits."""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Iterable, Mapping

import numpy as np

from ..mol.canon import canonical_form
from ..mol.molecule import Molecule
from ..mol.normalize import remove_hs
from .plan import SplitError, SplitPlan

log = logging.getLogger(__name__)

ACYCLIC = "ACYCLIC"
FORCE_TRAIN_FRACTION = 0.10


def murcko_framework(mol: Molecule, keep_exocyclic_multiple: bool = False) -> Molecule | None:
    """Ring systems plus linkers, or None for an acyclic molecule.

    Degree-1 heavy atoms are deleted repeatedly.  Each deleted bond is
    replaced by hydrogens on the surviving atom so valences are kept.  With
    ``keep_exocyclic_multiple`` a terminal atom double/triple bonded to a
    framework atom is kept (classic variant); by default it is pruned.
    """
    heavy, _ = remove_hs(mol)
    if not heavy.ring_info:
        return None
    orders = heavy.kekule_orders
    n = len(heavy.atoms)
    alive = [True] * n
    deg = [heavy.degree(i) for i in range(n)]
    extra_h = [0] * n
    stack = [i for i in range(n) if deg[i] <= 1]
    in_ring = [heavy.atom_in_ring(i) for i in range(n)]
    while stack:
        i = stack.pop()
        if not alive[i] or deg[i] > 1 or in_ring[i]:
            continue
        alive[i] = False
        for j, k in heavy.adjacency[i]:
            if alive[j]:
                deg[j] -= 1
                extra_h[j] += orders[k]
                if deg[j] <= 1:
                    stack.append(j)
    if keep_exocyclic_multiple:
        for i in range(n):
            if alive[i] or heavy.degree(i) != 1:
                continue
            j, k = heavy.adjacency[i][0]
            if alive[j] and orders[k] > 1:
                alive[i] = True
                extra_h[j] -= orders[k]
    keep = [i for i in range(n) if alive[i]]
    sub = heavy.subgraph(keep)
    atoms = [
        a.copy(explicit_h_count=a.explicit_h_count + extra_h[keep[t]], isotope=0, chirality=None)
        for t, a in enumerate(sub.atoms)
    ]
    return sub.copy(atoms=atoms)


def bm_scaffold(mol: Molecule, keep_exocyclic_multiple: bool = False) -> str:
    """Canonical SMILES of the Murcko framework, or ``ACYCLIC``."""
    fw = murcko_framework(mol, keep_exocyclic_multiple)
    return ACYCLIC if fw is None else canonical_form(fw)


def scaffold_split(
    keys: Mapping[str, str] | Iterable[tuple[str, str]],
    ratio: tuple[float, float, float] = (3, 1, 1),
    seed: int = 0,
    force_fraction: float = FORCE_TRAIN_FRACTION,
) -> SplitPlan:
    """Assign whole scaffold bins to train/valid/test.

    Bins holding more than ``force_fraction`` of all molecules go to train.
    The remaining bins, largest first with a seeded shuffle among equal
    sizes, each go to the split with the largest shortfall against its
    quota (ties resolved in train, valid, test order).
    """
    items = list(keys.items()) if isinstance(keys, Mapping) else list(keys)
    n = len(items)
    if n < 3:
        raise SplitError(f"{n} molecules cannot populate three splits")
    if len(ratio) != 3 or min(ratio) < 0 or sum(ratio) <= 0:
        raise SplitError(f"bad split ratio {ratio}")
    bins: dict[str, list[str]] = defaultdict(list)
    for cid, key in items:
        bins[key].append(str(cid))
    names = ("train", "valid", "test")
    quota = np.asarray(ratio, dtype=float) / float(sum(ratio)) * n
    filled = np.zeros(3)
    assign: dict[str, str] = {}
    rest = []
    forced = 0
    for key in sorted(bins):
        members = bins[key]
        if len(members) > force_fraction * n:
            for c in members:
                assign[c] = "train"
            filled[0] += len(members)
            forced += 1
        else:
            rest.append(key)
    rng = np.random.default_rng(seed)
    rest = [rest[i] for i in rng.permutation(len(rest))]
    rest.sort(key=lambda k: -len(bins[k]))  # stable: shuffle order kept within a size
    for key in rest:
        s = int(np.argmax(quota - filled))
        for c in bins[key]:
            assign[c] = names[s]
        filled[s] += len(bins[key])
    plan = SplitPlan("scaffold", assign, seed, meta={"ratio": list(ratio), "forced_bins": forced, "bins": len(bins)})
    empty = [s for s, c in zip(names, filled) if c == 0]
    if empty:
        msg = f"scaffold split leaves {', '.join(empty)} empty ({forced} bins forced to train)"
        log.warning(msg)
        plan.warnings.append(msg)
    return plan
