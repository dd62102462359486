"""SMILES reading and writing (OpenSMILES subset, stereo kept as annotation)."""

from __future__ import annotations

from . import elements
from .molecule import Atom, Bond, BondType, Molecule, MoleculeError


class SmilesError(ValueError):
    """Raised for unparsable SMILES; carries the 0-based character position."""

    def __init__(self, reason: str, position: int | None = None, text: str = ""):
        self.reason = reason
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{reason}{where}: {text!r}")


_BOND_SYMBOLS = {"-": BondType.SINGLE, "=": BondType.DOUBLE, "#": BondType.TRIPLE,
                 ":": BondType.AROMATIC, "/": BondType.SINGLE, "\\": BondType.SINGLE}


def implicit_hydrogens(element: int, aromatic: bool, bond_sum: int) -> int:
    """Implicit H count for an organic-subset atom given its bond-order sum.

    ``bond_sum`` counts aromatic bonds as 1.  Aromatic atoms reserve one
    valence unit for the pi bond when the lowest default valence allows it.
    """
    vals = elements.DEFAULT_VALENCES[element]
    if aromatic:
        target = vals[0]
        return target - bond_sum - 1 if bond_sum + 1 <= target else 0
    for v in vals:
        if v >= bond_sum:
            return v - bond_sum
    return 0


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.atoms: list[Atom] = []
        self.bonds: list[Bond] = []
        self.organic: list[bool] = []  # implicit H still to be resolved
        self.bond_pairs: set[tuple[int, int]] = set()
        self.implicit_aromatic: set[int] = set()  # bond indices typed aromatic by default

    def error(self, reason: str, pos: int | None = None):
        raise SmilesError(reason, self.pos if pos is None else pos, self.text)

    def add_bond(self, a: int, b: int, symbol: str | None, pos: int):
        if a == b:
            self.error("ring closure to the same atom", pos)
        key = (min(a, b), max(a, b))
        if key in self.bond_pairs:
            self.error("duplicate bond between the same atoms", pos)
        self.bond_pairs.add(key)
        if symbol is None:
            btype = (BondType.AROMATIC if self.atoms[a].is_aromatic and self.atoms[b].is_aromatic
                     else BondType.SINGLE)
            if btype is BondType.AROMATIC:
                self.implicit_aromatic.add(len(self.bonds))
            stereo = None
        elif symbol == "$":
            self.error("quadruple bonds are not supported", pos)
        else:
            btype = _BOND_SYMBOLS[symbol]
            stereo = symbol if symbol in "/\\" else None
        self.bonds.append(Bond(a, b, btype, stereo))

    def parse_bracket(self) -> Atom:
        t, start = self.text, self.pos
        end = t.find("]", start)
        if end < 0:
            self.error("unterminated bracket atom", start)
        self.pos += 1
        isotope = 0
        p = self.pos
        while p < end and t[p].isdigit():
            p += 1
        if p > self.pos:
            isotope = int(t[self.pos:p])
        self.pos = p
        aromatic = False
        sym = None
        two, one = t[self.pos:self.pos + 2], t[self.pos:self.pos + 1]
        if two in elements.AROMATIC_BRACKET and len(two) == 2:
            sym, aromatic = two, True
        elif len(two) == 2 and two[0].isupper() and two[1].islower() and two in elements.BY_SYMBOL:
            sym = two
        elif one in elements.AROMATIC_BRACKET:
            sym, aromatic = one, True
        elif one and one.isupper() and one in elements.BY_SYMBOL:
            sym = one
        elif one == "*":
            self.error("wildcard atoms are not supported")
        else:
            self.error("bad element symbol in bracket atom")
        self.pos += len(sym)
        z = elements.AROMATIC_BRACKET[sym] if aromatic else elements.atomic_number(sym)
        chirality = None
        if t[self.pos] == "@":
            q = self.pos + 1
            if t[q] == "@":
                q += 1
            elif t[q:q + 2] in ("TH", "AL", "SP", "TB", "OH"):
                q += 2
                while t[q].isdigit():
                    q += 1
            chirality = t[self.pos:q]
            self.pos = q
        hcount = 0
        if t[self.pos] == "H":
            self.pos += 1
            q = self.pos
            while t[q].isdigit():
                q += 1
            hcount = int(t[self.pos:q]) if q > self.pos else 1
            self.pos = q
        charge = 0
        if t[self.pos] in "+-":
            sign = 1 if t[self.pos] == "+" else -1
            ch = t[self.pos]
            q = self.pos + 1
            if t[q].isdigit():
                r = q
                while t[r].isdigit():
                    r += 1
                charge = sign * int(t[q:r])
                q = r
            else:
                n = 1
                while t[q] == ch:
                    n += 1
                    q += 1
                charge = sign * n
            self.pos = q
        if t[self.pos] == ":":
            q = self.pos + 1
            while t[q].isdigit():
                q += 1
            if q == self.pos + 1:
                self.error("empty atom class")
            self.pos = q
        if self.pos != end:
            self.error("unexpected character in bracket atom")
        self.pos = end + 1
        return Atom(z, formal_charge=charge, explicit_h_count=hcount, is_aromatic=aromatic,
                    isotope=isotope, chirality=chirality)

    def parse_atom(self) -> tuple[Atom, bool] | None:
        t = self.text
        c = t[self.pos]
        if c == "[":
            return self.parse_bracket(), False
        two = t[self.pos:self.pos + 2]
        if two in ("Cl", "Br"):
            self.pos += 2
            return Atom(elements.ORGANIC_SUBSET[two]), True
        if c in elements.ORGANIC_SUBSET:
            self.pos += 1
            return Atom(elements.ORGANIC_SUBSET[c]), True
        if c in elements.AROMATIC_ORGANIC:
            self.pos += 1
            return Atom(elements.AROMATIC_ORGANIC[c], is_aromatic=True), True
        if c == "*":
            self.error("wildcard atoms are not supported")
        return None

    def parse(self) -> Molecule:
        t = self.text
        if not t:
            raise SmilesError("empty SMILES", 0, t)
        prev: int | None = None
        pending: tuple[str, int] | None = None
        branches: list[int | None] = []
        rings: dict[int, tuple[int, str | None, int]] = {}
        expect_atom = True
        while self.pos < len(t):
            c = t[self.pos]
            start = self.pos
            if c in " \t\r\n":
                break
            if c == "(":
                if prev is None:
                    self.error("branch without a preceding atom")
                if pending is not None:
                    self.error("bond symbol before branch")
                branches.append(prev)
                self.pos += 1
                if self.pos < len(t) and t[self.pos] == ")":
                    self.error("empty branch")
                continue
            if c == ")":
                if not branches:
                    self.error("unmatched closing parenthesis")
                if pending is not None:
                    self.error("dangling bond at end of branch")
                prev = branches.pop()
                self.pos += 1
                continue
            if c in _BOND_SYMBOLS or c == "$":
                if pending is not None:
                    self.error("two consecutive bond symbols")
                if prev is None:
                    self.error("bond without a preceding atom")
                pending = (c, start)
                self.pos += 1
                continue
            if c == ".":
                if pending is not None:
                    self.error("bond symbol before dot")
                if branches:
                    self.error("dot inside a branch")
                if prev is None:
                    self.error("empty component")
                prev = None
                self.pos += 1
                continue
            if c.isdigit() or c == "%":
                if prev is None:
                    self.error("ring closure without a preceding atom")
                if c == "%":
                    digits = t[self.pos + 1:self.pos + 3]
                    if len(digits) != 2 or not digits.isdigit():
                        self.error("bad %nn ring closure")
                    num = int(digits)
                    self.pos += 3
                else:
                    num = int(c)
                    self.pos += 1
                sym = pending[0] if pending else None
                pending = None
                if num in rings:
                    other, osym, opos = rings.pop(num)
                    if sym and osym and sym != osym and not ({sym, osym} <= {"/", "\\", "-"}):
                        self.error("conflicting ring-closure bond symbols", start)
                    self.add_bond(other, prev, sym or osym, start)
                else:
                    rings[num] = (prev, sym, start)
                continue
            parsed = self.parse_atom()
            if parsed is None:
                self.error(f"unexpected character {c!r}")
            atom, organic = parsed
            self.atoms.append(atom)
            self.organic.append(organic)
            idx = len(self.atoms) - 1
            if prev is not None:
                self.add_bond(prev, idx, pending[0] if pending else None, pending[1] if pending else start)
            pending = None
            prev = idx
        if pending is not None:
            self.error("dangling bond at end of input", pending[1])
        if branches:
            self.error("unclosed branch")
        if rings:
            num, (_, _, pos) = next(iter(rings.items()))
            self.error(f"unmatched ring-closure digit {num}", pos)
        if not self.atoms:
            self.error("no atoms")
        return self.finish()

    def finish(self) -> Molecule:
        bond_sum = [0] * len(self.atoms)
        for b in self.bonds:
            o = 1 if b.type is BondType.AROMATIC else int(b.type)
            bond_sum[b.begin] += o
            bond_sum[b.end] += o
        for i, atom in enumerate(self.atoms):
            if self.organic[i]:
                atom.explicit_h_count = implicit_hydrogens(atom.element, atom.is_aromatic, bond_sum[i])
        mol = Molecule(self.atoms, self.bonds)
        # an unwritten bond between aromatic atoms outside any ring is single (biphenyl)
        fix = [k for k, b in enumerate(mol.bonds) if k in self.implicit_aromatic and not b.in_ring]
        if fix:
            bonds = [Bond(b.begin, b.end, BondType.SINGLE if k in fix else b.type, b.stereo)
                     for k, b in enumerate(mol.bonds)]
            mol = Molecule(self.atoms, bonds)
        return finalize(mol, self.text)


def finalize(mol: Molecule, text: str = "") -> Molecule:
    """Validate aromaticity and valences of a freshly built molecule."""
    for i, atom in enumerate(mol.atoms):
        if atom.is_aromatic and not mol.atom_in_ring(i):
            raise SmilesError("non-ring atom marked aromatic", None, text)
    for b in mol.bonds:
        if b.type is BondType.AROMATIC and not b.in_ring:
            raise SmilesError("non-ring bond marked aromatic", None, text)
    try:
        mol.kekule_orders
    except MoleculeError as exc:
        raise SmilesError(str(exc), None, text) from None
    for i, atom in enumerate(mol.atoms):
        vals = elements.allowed_valences(atom.element, atom.formal_charge)
        if vals is not None and mol.valence(i) > max(vals):
            raise SmilesError(
                f"valence violation on atom {i} ({atom.symbol}, valence {mol.valence(i)})", None, text
            )
    return mol


def parse_smiles(text: str) -> Molecule:
    """Parse a SMILES string into a perceived :class:`Molecule`.

    Raises:
        SmilesError: on syntax errors, unmatched ring closures, valence
            violations or aromatic systems that cannot be kekulized.
    """
    return _Parser(text.strip()).parse()


# --- writing ---------------------------------------------------------------


def _atom_token(mol: Molecule, i: int, bond_sum: int) -> str:
    atom = mol.atoms[i]
    sym = atom.symbol
    aromatic_sym = sym.lower() if atom.is_aromatic else sym
    organic_ok = (
        atom.formal_charge == 0
        and atom.isotope == 0
        and (sym in elements.ORGANIC_SUBSET)
        and (not atom.is_aromatic or aromatic_sym in elements.AROMATIC_ORGANIC)
    )
    if organic_ok and implicit_hydrogens(atom.element, atom.is_aromatic, bond_sum) == atom.explicit_h_count:
        return aromatic_sym
    parts = ["["]
    if atom.isotope:
        parts.append(str(atom.isotope))
    parts.append(aromatic_sym if atom.is_aromatic and aromatic_sym in elements.AROMATIC_BRACKET else sym)
    h = atom.explicit_h_count
    if h:
        parts.append("H" if h == 1 else f"H{h}")
    q = atom.formal_charge
    if q:
        sign = "+" if q > 0 else "-"
        parts.append(sign if abs(q) == 1 else f"{sign}{abs(q)}")
    parts.append("]")
    return "".join(parts)


def _bond_symbol(mol: Molecule, b: Bond) -> str:
    both_arom = mol.atoms[b.begin].is_aromatic and mol.atoms[b.end].is_aromatic
    if b.type is BondType.AROMATIC:
        return "" if both_arom else ":"
    if b.type is BondType.DOUBLE:
        return "="
    if b.type is BondType.TRIPLE:
        return "#"
    return "-" if both_arom else ""


def write_smiles(mol: Molecule, ranks: list[int] | None = None) -> str:
    """Write ``mol`` as SMILES; traversal order follows ``ranks`` when given."""
    n = len(mol.atoms)
    if n == 0:
        return ""
    if ranks is None:
        ranks = list(range(n))
    adj = mol.adjacency
    bond_sum = [0] * n
    for b in mol.bonds:
        o = 1 if b.type is BondType.AROMATIC else int(b.type)
        bond_sum[b.begin] += o
        bond_sum[b.end] += o

    visited = [False] * n
    fragments = []
    for comp in sorted(mol.components, key=lambda c: min(ranks[i] for i in c)):
        root = min(comp, key=lambda i: ranks[i])
        # pass 1: DFS tree and ring-closure bonds
        order: list[int] = []
        children: dict[int, list[int]] = {i: [] for i in comp}
        closures: dict[int, list[int]] = {i: [] for i in comp}  # bond indices
        tree_bonds: set[int] = set()
        stack = [(root, None)]
        seen_closure: set[int] = set()
        while stack:
            a, via = stack.pop()
            if visited[a]:
                continue
            visited[a] = True
            order.append(a)
            if via is not None:
                tree_bonds.add(via)
                parent = mol.bonds[via].other(a)
                children[parent].append(a)
            nbrs = sorted(adj[a], key=lambda x: ranks[x[0]], reverse=True)
            for j, k in nbrs:
                if not visited[j]:
                    stack.append((j, k))
        for k, b in enumerate(mol.bonds):
            if b.begin in children and k not in tree_bonds and k not in seen_closure:
                seen_closure.add(k)
                closures[b.begin].append(k)
                closures[b.end].append(k)
        position = {a: p for p, a in enumerate(order)}
        for a in comp:
            children[a].sort(key=lambda j: position[j])
            closures[a].sort(key=lambda k: (position[mol.bonds[k].other(a)], k))

        out: list[str] = []
        free_digits = list(range(1, 100))
        open_ring: dict[int, int] = {}

        def ring_label(d: int) -> str:
            return str(d) if d < 10 else f"%{d:02d}"

        def emit(a: int):
            out.append(_atom_token(mol, a, bond_sum[a]))
            for k in closures[a]:
                if k in open_ring:
                    d = open_ring.pop(k)
                    out.append(ring_label(d))
                    free_digits.append(d)
                    free_digits.sort()
                else:
                    d = free_digits.pop(0)
                    open_ring[k] = d
                    out.append(_bond_symbol(mol, mol.bonds[k]) + ring_label(d))
            kids = children[a]
            for m, c in enumerate(kids):
                bsym = _bond_symbol(mol, mol.bond_between(a, c))
                if m < len(kids) - 1:
                    out.append("(" + bsym)
                    emit(c)
                    out.append(")")
                else:
                    out.append(bsym)
                    emit(c)

        # recursion depth equals the longest chain; fine for molecules of realistic size
        emit(root)
        fragments.append("".join(out))
    return ".".join(fragments)
