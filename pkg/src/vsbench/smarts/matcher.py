"""Backtracking substructure matcher (VF2-style extension along query bonds)."""

from __future__ import annotations

from ..mol.molecule import Molecule
from ..mol.normalize import remove_hs
from .parser import Pattern


class MatchContext:
    """Flat per-atom and per-bond arrays of a hydrogen-suppressed molecule."""

    __slots__ = (
        "mol", "index_map", "elem", "arom", "charge", "isotope", "total_h", "degree",
        "total_degree", "ring_count", "min_ring", "ring_conn", "valence", "adj",
        "btype", "bring", "element_counts", "_anchor_cache", "_bond_lookup",
    )

    def __init__(self, mol: Molecule):
        view, index_map = remove_hs(mol)
        self.mol = view
        self.index_map = index_map
        n = len(view.atoms)
        atoms = view.atoms
        self.elem = [a.element for a in atoms]
        self.arom = [a.is_aromatic for a in atoms]
        self.charge = [a.formal_charge for a in atoms]
        self.isotope = [a.isotope for a in atoms]
        self.total_h = [view.total_h(i) for i in range(n)]
        self.degree = [view.degree(i) for i in range(n)]
        self.total_degree = [self.degree[i] + self.total_h[i] for i in range(n)]
        sizes = view.atom_ring_sizes
        self.ring_count = [len(s) for s in sizes]
        self.min_ring = [min(s) if s else 0 for s in sizes]
        self.ring_conn = view.ring_bond_count
        orders = view.kekule_orders
        self.adj = view.adjacency
        self.valence = [sum(orders[k] for _, k in self.adj[i]) + atoms[i].explicit_h_count for i in range(n)]
        self.btype = [int(b.type) for b in view.bonds]
        self.bring = [b.in_ring for b in view.bonds]
        counts: dict[int, int] = {}
        for z in self.elem:
            counts[z] = counts.get(z, 0) + 1
        self.element_counts = counts
        self._anchor_cache: dict[int, frozenset[int]] = {}
        self._bond_lookup = view._bond_lookup

    def anchors(self, pattern: Pattern) -> frozenset[int]:
        """Atoms onto which query atom 0 of ``pattern`` can be mapped."""
        key = id(pattern)
        hit = self._anchor_cache.get(key)
        if hit is None:
            hit = frozenset(i for i in range(len(self.elem)) if _search(self, pattern, anchor=i))
            self._anchor_cache[key] = hit
        return hit


def match_context(mol: Molecule) -> MatchContext:
    ctx = mol.__dict__.get("_match_context")
    if ctx is None:
        ctx = MatchContext(mol)
        mol.__dict__["_match_context"] = ctx
    return ctx


def _atom_ok(ctx: MatchContext, pattern: Pattern, q: int, i: int) -> bool:
    return ctx.total_h[i] >= pattern.min_h[q] and pattern.atom_preds[q](ctx, i)


def _plan(pattern: Pattern, members: list[int], root: int):
    """BFS order of a query component: (atom, parent, parent bond pred, back edges)."""
    order = [(root, None, None, [])]
    placed = {root: 0}
    queue = [root]
    head = 0
    while head < len(queue):
        q = queue[head]
        head += 1
        for r, pred in pattern.neighbors[q]:
            if r in placed:
                continue
            back = []
            for s, spred in pattern.neighbors[r]:
                if s in placed and s != q:
                    back.append((s, spred))
            placed[r] = len(order)
            order.append((r, q, pred, back))
            queue.append(r)
    return order


def _search(ctx: MatchContext, pattern: Pattern, anchor: int | None = None, find_all: bool = False):
    n_mol = len(ctx.elem)
    mapping: dict[int, int] = {}
    used: set[int] = set()
    results = []
    comps = pattern.components
    if anchor is not None and not _atom_ok(ctx, pattern, 0, anchor):
        return False

    plans = []
    for c, members in enumerate(comps):
        root = members[0]
        if anchor is None and len(members) > 1:
            # start from the most selective query atom
            best, best_n = root, None
            for q in members:
                cnt = 0
                for i in range(n_mol):
                    if _atom_ok(ctx, pattern, q, i):
                        cnt += 1
                        if best_n is not None and cnt >= best_n:
                            break
                if best_n is None or cnt < best_n:
                    best, best_n = q, cnt
                    if cnt == 0:
                        return [] if find_all else False
            root = best
        plans.append(_plan(pattern, members, root))

    lookup = ctx._bond_lookup
    adj = ctx.adj

    def extend(ci: int, step: int) -> bool:
        if ci == len(plans):
            if find_all:
                results.append(dict(mapping))
                return False
            return True
        plan = plans[ci]
        if step == len(plan):
            return extend(ci + 1, 0)
        q, parent, pred, back = plan[step]
        if parent is None:
            if ci == 0 and anchor is not None:
                cands = (anchor,)
            else:
                cands = range(n_mol)
            for i in cands:
                if i in used or not _atom_ok(ctx, pattern, q, i):
                    continue
                mapping[q] = i
                used.add(i)
                if extend(ci, step + 1):
                    return True
                used.discard(i)
                del mapping[q]
            return False
        pi = mapping[parent]
        for i, k in adj[pi]:
            if i in used or not pred(ctx, k) or not _atom_ok(ctx, pattern, q, i):
                continue
            ok = True
            for s, spred in back:
                kb = lookup.get((i, mapping[s]))
                if kb is None or not spred(ctx, kb):
                    ok = False
                    break
            if not ok:
                continue
            mapping[q] = i
            used.add(i)
            if extend(ci, step + 1):
                return True
            used.discard(i)
            del mapping[q]
        return False

    found = extend(0, 0)
    return results if find_all else found


def _prefilter(ctx: MatchContext, pattern: Pattern) -> bool:
    if len(pattern) > len(ctx.elem):
        return False
    counts = ctx.element_counts
    for z, need in pattern.required_elements.items():
        if counts.get(z, 0) < need:
            return False
    return True


def has_match(mol: Molecule | MatchContext, pattern: Pattern) -> bool:
    """True iff ``pattern`` has at least one embedding in ``mol``."""
    ctx = mol if isinstance(mol, MatchContext) else match_context(mol)
    if not _prefilter(ctx, pattern):
        return False
    return _search(ctx, pattern)


def find_matches(mol: Molecule | MatchContext, pattern: Pattern) -> list[tuple[int, ...]]:
    """All embeddings as tuples of atom indices of the hydrogen-suppressed view."""
    ctx = mol if isinstance(mol, MatchContext) else match_context(mol)
    if not _prefilter(ctx, pattern):
        return []
    maps = _search(ctx, pattern, find_all=True)
    return [tuple(m[q] for q in range(len(pattern))) for m in maps]


def matches_at(ctx: MatchContext, pattern: Pattern, atom: int) -> bool:
    """True iff query atom 0 can be mapped onto ``atom`` (view index)."""
    return _search(ctx, pattern, anchor=atom)
