"""SMARTS subset parser.

Produces a :class:`Pattern` whose atom and bond expressions are compiled to
plain Python predicates over a :class:`~vsbench.smarts.matcher.MatchContext`.
Explicit hydrogen query atoms (``[#1]``, ``[H]``) are folded into a minimum
hydrogen count on their heavy neighbour, since molecules are matched in
hydrogen-suppressed form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from ..mol import elements

AtomPred = Callable[["object", int], bool]
BondPred = Callable[["object", int], bool]


class SmartsError(ValueError):
    def __init__(self, reason: str, position: int | None, text: str):
        self.reason = reason
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{reason}{where}: {text!r}")


class UnsupportedFeature(SmartsError):
    """The pattern is valid SMARTS but uses a feature this matcher does not implement."""

    def __init__(self, token: str, position: int | None, text: str):
        self.token = token
        super().__init__(f"unsupported SMARTS feature {token!r}", position, text)


@dataclass(frozen=True)
class SmartsConfig:
    max_recursion_depth: int = 1  # 0 disables $() entirely


@dataclass
class Pattern:
    text: str
    atom_preds: list[AtomPred]
    min_h: list[int]
    bonds: list[tuple[int, int, BondPred]]
    components: list[list[int]]
    required_elements: dict[int, int] = field(default_factory=dict)
    neighbors: list[list[tuple[int, BondPred]]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.atom_preds)


# --- expression AST -------------------------------------------------------
# nodes: ("and", a, b) ("or", a, b) ("not", a) ("prim", name, value)

_BOND_CHARS = set("-=#:~@/\\!&,;")
_H_ATOM = re.compile(r"\d*H(\+\d*|-\d*|\++|-+)?(:\d+)?")
_ORGANIC = {"B", "C", "N", "O", "S", "P", "F", "I", "Cl", "Br"}
_AROMATIC_SYMBOLS = ["se", "as", "te", "c", "n", "o", "s", "p", "b"]


class _Parser:
    def __init__(self, text: str, config: SmartsConfig, depth: int):
        self.text = text
        self.config = config
        self.depth = depth
        self.pos = 0

    def error(self, reason, pos=None):
        raise SmartsError(reason, self.pos if pos is None else pos, self.text)

    def unsupported(self, token, pos=None):
        raise UnsupportedFeature(token, self.pos if pos is None else pos, self.text)

    # atom expressions ----------------------------------------------------

    def parse_atom_expr(self, end: int):
        node = self._low_and(end)
        if self.pos != end:
            self.error("unexpected character in bracket atom")
        return node

    def _low_and(self, end):
        node = self._or(end)
        while self.pos < end and self.text[self.pos] == ";":
            self.pos += 1
            node = ("and", node, self._or(end))
        return node

    def _or(self, end):
        node = self._high_and(end)
        while self.pos < end and self.text[self.pos] == ",":
            self.pos += 1
            node = ("or", node, self._high_and(end))
        return node

    def _high_and(self, end):
        node = self._unary(end)
        while self.pos < end and self.text[self.pos] not in ";,":
            if self.text[self.pos] == "&":
                self.pos += 1
            node = ("and", node, self._unary(end))
        return node

    def _unary(self, end):
        if self.pos >= end:
            self.error("missing atom primitive")
        if self.text[self.pos] == "!":
            self.pos += 1
            return ("not", self._unary(end))
        return self._primitive(end)

    def _number(self, end) -> int | None:
        t, p = self.text, self.pos
        while p < end and t[p].isdigit():
            p += 1
        if p == self.pos:
            return None
        val = int(t[self.pos:p])
        self.pos = p
        return val

    def _primitive(self, end):
        t = self.text
        c = t[self.pos]
        start = self.pos
        if c == "$":
            if t[self.pos + 1:self.pos + 2] != "(":
                self.error("'$' must be followed by '('")
            close = _matching_paren(t, self.pos + 1)
            if close < 0:
                self.error("unterminated recursive SMARTS")
            if self.depth >= self.config.max_recursion_depth:
                self.unsupported("$(", start)
            inner = t[self.pos + 2:close]
            sub = compile_pattern(inner, self.config, _depth=self.depth + 1)
            if len(sub.components) != 1:
                self.unsupported("multi-component recursive SMARTS", start)
            self.pos = close + 1
            return ("prim", "recursive", sub)
        if c.isdigit():
            return ("prim", "isotope", self._number(end))
        if c == "#":
            self.pos += 1
            n = self._number(end)
            if n is None:
                self.error("'#' must be followed by an atomic number")
            return ("prim", "element", n)
        if c == "*":
            self.pos += 1
            return ("prim", "true", None)
        if c in "+-":
            sign = 1 if c == "+" else -1
            self.pos += 1
            n = self._number(end)
            if n is None:
                n = 1
                while self.pos < end and t[self.pos] == c:
                    n += 1
                    self.pos += 1
            return ("prim", "charge", sign * n)
        if c == "@":
            self.pos += 1
            while self.pos < end and (t[self.pos] in "@?" or t[self.pos].isalnum()):
                if t[self.pos].isalpha() and t[self.pos] not in "THALSPBO":
                    break
                self.pos += 1
            return ("prim", "true", None)  # chirality is not part of the match
        if c == ":":
            self.pos += 1
            if self._number(end) is None:
                self.error("atom class needs a number")
            return ("prim", "true", None)
        if c == "^":
            self.unsupported("^", start)
        if c == "{" or c == "<":
            self.unsupported(c, start)
        # hydrogen as an element: [H], [2H], [H+]
        if c == "H" and self._h_is_element(end):
            self.pos += 1
            return ("prim", "element", 1)
        for sym in _AROMATIC_SYMBOLS:
            if t.startswith(sym, self.pos):
                self.pos += len(sym)
                return ("prim", "aromatic_element", elements.AROMATIC_BRACKET[sym])
        if c.isupper():
            two = t[self.pos:self.pos + 2]
            if len(two) == 2 and two[1].islower() and two in elements.BY_SYMBOL:
                self.pos += 2
                return ("prim", "aliphatic_element", elements.BY_SYMBOL[two].number)
            if c == "D":
                self.pos += 1
                n = self._number(end)
                return ("prim", "degree", 1 if n is None else n)
            if c == "X":
                self.pos += 1
                n = self._number(end)
                return ("prim", "total_degree", 1 if n is None else n)
            if c == "H":
                self.pos += 1
                n = self._number(end)
                return ("prim", "total_h", 1 if n is None else n)
            if c == "R":
                self.pos += 1
                n = self._number(end)
                return ("prim", "in_ring", None) if n is None else ("prim", "ring_count", n)
            if c == "A":
                self.pos += 1
                return ("prim", "aliphatic", None)
            if c in elements.BY_SYMBOL:
                self.pos += 1
                return ("prim", "aliphatic_element", elements.BY_SYMBOL[c].number)
        if c == "a":
            self.pos += 1
            return ("prim", "aromatic", None)
        if c == "h":
            self.pos += 1
            n = self._number(end)
            return ("prim", "has_h", None) if n is None else ("prim", "total_h", n)
        if c == "r":
            self.pos += 1
            n = self._number(end)
            return ("prim", "in_ring", None) if n is None else ("prim", "ring_size", n)
        if c == "x":
            self.pos += 1
            n = self._number(end)
            return ("prim", "ring_bonded", None) if n is None else ("prim", "ring_connectivity", n)
        if c == "v":
            self.pos += 1
            n = self._number(end)
            return ("prim", "valence", 1 if n is None else n)
        self.error(f"unknown atom primitive {c!r}")

    def _h_is_element(self, end) -> bool:
        # [H], [2H], [H+]: hydrogen as an element rather than an H count
        content = self.text[self.text.rfind("[", 0, self.pos) + 1:end]
        return _H_ATOM.fullmatch(content) is not None

    # bond expressions ----------------------------------------------------

    def parse_bond_expr(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _BOND_CHARS:
            self.pos += 1
        token = self.text[start:self.pos]
        if not token:
            return None
        sub = _BondExpr(token, start, self)
        return sub.parse()


class _BondExpr:
    def __init__(self, token, offset, parent: _Parser):
        self.t = token
        self.p = 0
        self.offset = offset
        self.parent = parent

    def parse(self):
        node = self._low()
        if self.p != len(self.t):
            self.parent.error("bad bond expression", self.offset + self.p)
        return node

    def _low(self):
        n = self._or()
        while self.p < len(self.t) and self.t[self.p] == ";":
            self.p += 1
            n = ("and", n, self._or())
        return n

    def _or(self):
        n = self._high()
        while self.p < len(self.t) and self.t[self.p] == ",":
            self.p += 1
            n = ("or", n, self._high())
        return n

    def _high(self):
        n = self._unary()
        while self.p < len(self.t) and self.t[self.p] not in ";,":
            if self.t[self.p] == "&":
                self.p += 1
            n = ("and", n, self._unary())
        return n

    def _unary(self):
        if self.p >= len(self.t):
            self.parent.error("missing bond primitive", self.offset + self.p)
        c = self.t[self.p]
        if c == "!":
            self.p += 1
            return ("not", self._unary())
        self.p += 1
        if c in "-/\\":
            return ("prim", "order", 1)
        if c == "=":
            return ("prim", "order", 2)
        if c == "#":
            return ("prim", "order", 3)
        if c == ":":
            return ("prim", "order", 4)
        if c == "~":
            return ("prim", "true", None)
        if c == "@":
            return ("prim", "ring", None)
        self.parent.error(f"unexpected bond character {c!r}", self.offset + self.p - 1)


def _matching_bracket(text: str, open_pos: int) -> int:
    depth = 0
    for k in range(open_pos, len(text)):
        if text[k] == "[":
            depth += 1
        elif text[k] == "]":
            depth -= 1
            if depth == 0:
                return k
    return -1


def _matching_paren(text: str, open_pos: int) -> int:
    depth = 0
    for k in range(open_pos, len(text)):
        if text[k] == "(":
            depth += 1
        elif text[k] == ")":
            depth -= 1
            if depth == 0:
                return k
    return -1


# --- compilation -----------------------------------------------------------


def _compile_atom(node) -> AtomPred:
    kind = node[0]
    if kind == "and":
        a, b = _compile_atom(node[1]), _compile_atom(node[2])
        return lambda c, i: a(c, i) and b(c, i)
    if kind == "or":
        a, b = _compile_atom(node[1]), _compile_atom(node[2])
        return lambda c, i: a(c, i) or b(c, i)
    if kind == "not":
        a = _compile_atom(node[1])
        return lambda c, i: not a(c, i)
    _, name, v = node
    if name == "true":
        return lambda c, i: True
    if name == "element":
        return lambda c, i: c.elem[i] == v
    if name == "aromatic_element":
        return lambda c, i: c.elem[i] == v and c.arom[i]
    if name == "aliphatic_element":
        return lambda c, i: c.elem[i] == v and not c.arom[i]
    if name == "aromatic":
        return lambda c, i: c.arom[i]
    if name == "aliphatic":
        return lambda c, i: not c.arom[i]
    if name == "isotope":
        return lambda c, i: c.isotope[i] == v
    if name == "charge":
        return lambda c, i: c.charge[i] == v
    if name == "degree":
        return lambda c, i: c.degree[i] == v
    if name == "total_degree":
        return lambda c, i: c.total_degree[i] == v
    if name == "total_h":
        return lambda c, i: c.total_h[i] == v
    if name == "has_h":
        return lambda c, i: c.total_h[i] > 0
    if name == "in_ring":
        return lambda c, i: c.ring_count[i] > 0
    if name == "ring_count":
        return lambda c, i: c.ring_count[i] == v
    if name == "ring_size":
        return lambda c, i: c.min_ring[i] == v
    if name == "ring_bonded":
        return lambda c, i: c.ring_conn[i] > 0
    if name == "ring_connectivity":
        return lambda c, i: c.ring_conn[i] == v
    if name == "valence":
        return lambda c, i: c.valence[i] == v
    if name == "recursive":
        sub = v
        return lambda c, i: i in c.anchors(sub)
    raise AssertionError(name)


def _compile_bond(node) -> BondPred:
    if node is None:
        return lambda c, k: c.btype[k] == 1 or c.btype[k] == 4
    kind = node[0]
    if kind == "and":
        a, b = _compile_bond(node[1]), _compile_bond(node[2])
        return lambda c, k: a(c, k) and b(c, k)
    if kind == "or":
        a, b = _compile_bond(node[1]), _compile_bond(node[2])
        return lambda c, k: a(c, k) or b(c, k)
    if kind == "not":
        a = _compile_bond(node[1])
        return lambda c, k: not a(c, k)
    _, name, v = node
    if name == "true":
        return lambda c, k: True
    if name == "order":
        return lambda c, k: c.btype[k] == v
    if name == "ring":
        return lambda c, k: c.bring[k]
    raise AssertionError(name)


def _definite_element(node) -> int | None:
    """Element an expression forces, if any (used for prefiltering)."""
    kind = node[0]
    if kind == "prim":
        if node[1] in ("element", "aromatic_element", "aliphatic_element"):
            return node[2]
        return None
    if kind == "and":
        return _definite_element(node[1]) or _definite_element(node[2])
    if kind == "or":
        a, b = _definite_element(node[1]), _definite_element(node[2])
        return a if a is not None and a == b else None
    return None


def _is_plain_hydrogen(node) -> bool:
    return node in (("prim", "element", 1),)


def compile_pattern(text: str, config: SmartsConfig | None = None, *, _depth: int = 0) -> Pattern:
    """Compile SMARTS ``text``.

    Raises:
        SmartsError: on syntax errors (with character position).
        UnsupportedFeature: for valid SMARTS outside the supported subset,
            naming the offending token.
    """
    config = config or SmartsConfig()
    if not text or not text.strip():
        raise SmartsError("empty SMARTS", 0, text or "")
    text = text.strip()
    p = _Parser(text, config, _depth)
    atoms: list = []
    bonds: list[tuple[int, int, object]] = []
    comp_of: list[int] = []
    comp = 0
    prev = None
    pending = None  # (bond AST, position) or marker
    pending_set = False
    branches: list[int | None] = []
    rings: dict[int, tuple[int, object, bool]] = {}
    t = text
    if ">" in t:
        p.unsupported(">", t.index(">"))
    while p.pos < len(t):
        c = t[p.pos]
        start = p.pos
        if c == "(":
            if prev is None:
                if not atoms:
                    p.unsupported("component-level grouping", start)
                p.error("branch without a preceding atom")
            if pending_set:
                p.error("bond before branch")
            branches.append(prev)
            p.pos += 1
            continue
        if c == ")":
            if not branches:
                p.error("unmatched ')'")
            if pending_set:
                p.error("dangling bond at end of branch")
            prev = branches.pop()
            p.pos += 1
            continue
        if c == ".":
            if pending_set or branches:
                p.error("misplaced '.'")
            prev = None
            comp += 1
            p.pos += 1
            continue
        if c in _BOND_CHARS and prev is not None and not pending_set:
            pending = p.parse_bond_expr()
            pending_set = True
            continue
        if c.isdigit() or c == "%":
            if prev is None:
                p.error("ring closure without a preceding atom")
            if c == "%":
                digits = t[p.pos + 1:p.pos + 3]
                if len(digits) != 2 or not digits.isdigit():
                    p.error("bad %nn ring closure")
                num = int(digits)
                p.pos += 3
            else:
                num = int(c)
                p.pos += 1
            if num in rings:
                other, obond, oset = rings.pop(num)
                bond = pending if pending_set else (obond if oset else None)
                if other == prev:
                    p.error("ring closure to the same atom", start)
                bonds.append((other, prev, bond))
            else:
                rings[num] = (prev, pending, pending_set)
            pending, pending_set = None, False
            continue
        # atom
        if c == "[":
            close = _matching_bracket(t, p.pos)
            if close < 0:
                p.error("unterminated bracket atom")
            p.pos += 1
            expr = p.parse_atom_expr(close)
            p.pos = close + 1
        elif t.startswith(("Cl", "Br"), p.pos):
            expr = ("prim", "aliphatic_element", elements.BY_SYMBOL[t[p.pos:p.pos + 2]].number)
            p.pos += 2
        elif c in _ORGANIC:
            expr = ("prim", "aliphatic_element", elements.BY_SYMBOL[c].number)
            p.pos += 1
        elif c in "cnospb":
            expr = ("prim", "aromatic_element", elements.AROMATIC_ORGANIC[c])
            p.pos += 1
        elif c == "*":
            expr = ("prim", "true", None)
            p.pos += 1
        elif c == "a":
            expr = ("prim", "aromatic", None)
            p.pos += 1
        elif c == "A":
            expr = ("prim", "aliphatic", None)
            p.pos += 1
        else:
            p.error(f"unexpected character {c!r}")
        atoms.append(expr)
        comp_of.append(comp)
        idx = len(atoms) - 1
        if prev is not None:
            bonds.append((prev, idx, pending if pending_set else None))
        pending, pending_set = None, False
        prev = idx
    if pending_set:
        p.error("dangling bond at end of pattern")
    if branches:
        p.error("unclosed branch")
    if rings:
        num, (_, _, _) = next(iter(rings.items()))
        p.error(f"unmatched ring-closure digit {num}")
    if not atoms:
        p.error("no atoms")

    # fold explicit hydrogens into their heavy neighbour
    n = len(atoms)
    deg = [0] * n
    for a, b, _ in bonds:
        deg[a] += 1
        deg[b] += 1
    is_h = [_is_plain_hydrogen(e) for e in atoms]
    min_h = [0] * n
    drop = [False] * n
    for k, (a, b, bexpr) in enumerate(bonds):
        for h, heavy in ((a, b), (b, a)):
            if is_h[h] and not is_h[heavy]:
                if deg[h] != 1 or bexpr not in (None, ("prim", "order", 1), ("prim", "true", None)):
                    p.unsupported("[#1] in a non-terminal position", None)
                min_h[heavy] += 1
                drop[h] = True
    for i in range(n):
        if is_h[i] and not drop[i]:
            p.unsupported("explicit hydrogen query atom", None)
    if _depth > 0 and drop[0]:
        p.unsupported("recursive SMARTS anchored on hydrogen", None)
    keep = [i for i in range(n) if not drop[i]]
    remap = {old: new for new, old in enumerate(keep)}
    atom_preds = [_compile_atom(atoms[i]) for i in keep]
    new_min_h = [min_h[i] for i in keep]
    new_bonds = [(remap[a], remap[b], _compile_bond(e)) for a, b, e in bonds if a in remap and b in remap]
    comps: dict[int, list[int]] = {}
    for i in keep:
        comps.setdefault(comp_of[i], []).append(remap[i])
    neighbors: list[list[tuple[int, BondPred]]] = [[] for _ in keep]
    for a, b, pred in new_bonds:
        neighbors[a].append((b, pred))
        neighbors[b].append((a, pred))
    # every atom must be reachable from the first atom of its component
    for members in comps.values():
        seen = {members[0]}
        stack = [members[0]]
        while stack:
            x = stack.pop()
            for y, _ in neighbors[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != set(members):
            p.error("disconnected atoms within one component")
    required: dict[int, int] = {}
    for i in keep:
        z = _definite_element(atoms[i])
        if z is not None:
            required[z] = required.get(z, 0) + 1
    return Pattern(
        text=text,
        atom_preds=atom_preds,
        min_h=new_min_h,
        bonds=new_bonds,
        components=[comps[k] for k in sorted(comps)],
        required_elements=required,
        neighbors=neighbors,
    )
