"""Smallest-set-of-smallest-rings perception.

Candidate cycles come from shortest paths rooted at every atom of a fused
ring system (Horton's construction); a minimum cycle basis is then picked
greedily by size with Gaussian elimination over GF(2) on bond bitmasks.
Isolated simple rings skip the candidate search entirely.
"""

from __future__ import annotations

from collections import deque


def _cyclic_core(n: int, adjacency) -> list[set[int]]:
    nbrs = [set(j for j, _ in adjacency[i]) for i in range(n)]
    degree = [len(s) for s in nbrs]
    queue = deque(i for i in range(n) if degree[i] <= 1)
    removed = [False] * n
    while queue:
        i = queue.popleft()
        if removed[i]:
            continue
        removed[i] = True
        for j in nbrs[i]:
            if not removed[j]:
                degree[j] -= 1
                if degree[j] <= 1:
                    queue.append(j)
    core = [set() if removed[i] else {j for j in nbrs[i] if not removed[j]} for i in range(n)]
    return core


def _order_cycle(edges: list[tuple[int, int]]) -> tuple[int, ...]:
    nb: dict[int, list[int]] = {}
    for a, b in edges:
        nb.setdefault(a, []).append(b)
        nb.setdefault(b, []).append(a)
    start = min(nb)
    cycle = [start]
    first = min(nb[start])
    prev, cur = start, first
    while cur != start:
        cycle.append(cur)
        a, b = nb[cur]
        prev, cur = cur, (b if a == prev else a)
    return tuple(cycle)


def _bfs_tree(root: int, core: list[set[int]]):
    parent = {root: None}
    dist = {root: 0}
    order = deque([root])
    while order:
        a = order.popleft()
        for b in sorted(core[a]):
            if b not in dist:
                dist[b] = dist[a] + 1
                parent[b] = a
                order.append(b)
    return parent, dist


def _path(parent, v) -> list[int]:
    out = []
    while v is not None:
        out.append(v)
        v = parent[v]
    return out


def _system_rings(atoms: list[int], core: list[set[int]], edge_bit: dict) -> list[tuple[int, ...]]:
    n_edges = sum(len(core[a]) for a in atoms) // 2
    n_rings = n_edges - len(atoms) + 1
    if n_rings == 1:
        edges = [(a, b) for a in atoms for b in core[a] if a < b]
        return [_order_cycle(edges)]

    candidates = {}
    for root in atoms:
        parent, dist = _bfs_tree(root, core)
        for x in atoms:
            for y in core[x]:
                if x >= y:
                    continue
                if parent.get(x) == y or parent.get(y) == x:
                    continue
                px, py = _path(parent, x), _path(parent, y)
                if len(set(px) & set(py)) != 1:
                    continue
                mask = edge_bit[(x, y)]
                for p in (px, py):
                    for k in range(len(p) - 1):
                        mask |= edge_bit[(p[k], p[k + 1])]
                size = len(px) + len(py) - 1
                if mask not in candidates:
                    candidates[mask] = size
    ordered = sorted(candidates.items(), key=lambda kv: (kv[1], kv[0]))
    basis: dict[int, int] = {}
    chosen = []
    for mask, size in ordered:
        v = mask
        while v:
            pivot = v.bit_length() - 1
            if pivot in basis:
                v ^= basis[pivot]
            else:
                basis[pivot] = v
                chosen.append(mask)
                break
        if len(chosen) == n_rings:
            break
    bit_edge = {bit: e for e, bit in edge_bit.items() if e[0] < e[1]}
    rings = []
    for mask in chosen:
        edges = []
        m = mask
        while m:
            low = m & -m
            edges.append(bit_edge[low])
            m ^= low
        rings.append(_order_cycle(edges))
    return rings


def sssr(n: int, adjacency) -> list[tuple[int, ...]]:
    """Return the SSSR of a graph given as per-atom (neighbour, bond) lists."""
    core = _cyclic_core(n, adjacency)
    seen = [False] * n
    rings: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start] or not core[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in core[a]:
                if not seen[b]:
                    seen[b] = True
                    stack.append(b)
        comp.sort()
        edge_bit = {}
        bit = 1
        for a in comp:
            for b in sorted(core[a]):
                if a < b:
                    edge_bit[(a, b)] = bit
                    edge_bit[(b, a)] = bit
                    bit <<= 1
        rings.extend(_system_rings(comp, core, edge_bit))
    rings.sort(key=lambda r: (len(r), r))
    return rings
