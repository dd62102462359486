"""MDL V2000 molfile / SD file reading and writing.

Only the parts of the format needed for screening data are handled: atom
and bond blocks, ``M  CHG`` / ``M  ISO`` properties and SD data fields.
Hydrogens not present as atoms are added implicitly from default valences.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import BinaryIO, Iterator, TextIO

from . import elements
from .molecule import Atom, Bond, BondType, Molecule, MoleculeError
from .smiles import SmilesError, finalize

_CHARGE_CODES = {0: 0, 1: 3, 2: 2, 3: 1, 4: 0, 5: -1, 6: -2, 7: -3}
_BOND_CODES = {1: BondType.SINGLE, 2: BondType.DOUBLE, 3: BondType.TRIPLE, 4: BondType.AROMATIC}


class SdfError(ValueError):
    def __init__(self, reason: str, line: int):
        self.reason = reason
        self.line = line
        super().__init__(f"line {line}: {reason}")


@dataclass
class SdfRecordError:
    """A skipped block: where it started and what was wrong with it."""

    block_start: int
    line: int
    reason: str


def _implicit_h(atom: Atom, bond_sum: int, n_aromatic: int) -> int:
    if atom.element not in elements.DEFAULT_VALENCES:
        return 0
    if atom.formal_charge:
        vals = elements.allowed_valences(atom.element, atom.formal_charge) or ()
    else:
        vals = elements.DEFAULT_VALENCES[atom.element]
    if not vals:
        return 0
    if n_aromatic:
        target = vals[0]
        return max(target - bond_sum - 1, 0)
    for v in vals:
        if v >= bond_sum:
            return v - bond_sum
    return 0


def _int(text: str, line: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SdfError(f"bad {what} {text.strip()!r}", line) from None


def _float(text: str, line: int, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise SdfError(f"bad {what} {text.strip()!r}", line) from None


def parse_molblock(lines: list[str], first_line: int = 1) -> Molecule:
    """Build a molecule from the lines of one molfile (up to ``M  END``)."""
    if len(lines) < 4:
        raise SdfError("truncated header", first_line + len(lines))
    title = lines[0].strip()
    counts = lines[3]
    ln = first_line + 3
    if "V3000" in counts:
        raise SdfError("V3000 molfiles are not supported", ln)
    if len(counts) < 6:
        raise SdfError("malformed counts line", ln)
    n_atoms = _int(counts[0:3], ln, "atom count")
    n_bonds = _int(counts[3:6], ln, "bond count")
    if n_atoms < 0 or n_bonds < 0:
        raise SdfError("malformed counts line", ln)
    if len(lines) < 4 + n_atoms + n_bonds:
        raise SdfError("truncated block", first_line + len(lines))

    atoms: list[Atom] = []
    for k in range(n_atoms):
        line = lines[4 + k]
        ln = first_line + 4 + k
        if len(line) < 34:
            raise SdfError("short atom line", ln)
        x = _float(line[0:10], ln, "x coordinate")
        y = _float(line[10:20], ln, "y coordinate")
        z = _float(line[20:30], ln, "z coordinate")
        sym = line[31:34].strip()
        if sym not in elements.BY_SYMBOL:
            raise SdfError(f"unknown element {sym!r}", ln)
        code = _int(line[36:39], ln, "charge code") if len(line) >= 39 and line[36:39].strip() else 0
        if code not in _CHARGE_CODES:
            raise SdfError(f"bad charge code {code}", ln)
        atoms.append(Atom(elements.atomic_number(sym), formal_charge=_CHARGE_CODES[code], coordinates=(x, y, z)))

    bonds: list[Bond] = []
    for k in range(n_bonds):
        line = lines[4 + n_atoms + k]
        ln = first_line + 4 + n_atoms + k
        if len(line) < 9:
            raise SdfError("short bond line", ln)
        a = _int(line[0:3], ln, "bond atom")
        b = _int(line[3:6], ln, "bond atom")
        code = _int(line[6:9], ln, "bond type")
        if code not in _BOND_CODES:
            raise SdfError(f"unsupported bond type {code}", ln)
        if not (1 <= a <= n_atoms and 1 <= b <= n_atoms):
            raise SdfError("bond references a missing atom", ln)
        bonds.append(Bond(a - 1, b - 1, _BOND_CODES[code]))

    charges_reset = False
    for k in range(4 + n_atoms + n_bonds, len(lines)):
        line = lines[k]
        ln = first_line + k
        if line.startswith("M  END"):
            break
        if line.startswith("M  CHG") or line.startswith("M  ISO"):
            fields = line[6:].split()
            count = _int(fields[0], ln, "property count") if fields else 0
            if len(fields) < 1 + 2 * count:
                raise SdfError("truncated property line", ln)
            if line.startswith("M  CHG") and not charges_reset:
                for atom in atoms:
                    atom.formal_charge = 0
                charges_reset = True
            for p in range(count):
                idx = _int(fields[1 + 2 * p], ln, "atom index")
                val = _int(fields[2 + 2 * p], ln, "property value")
                if not 1 <= idx <= n_atoms:
                    raise SdfError("property references a missing atom", ln)
                if line.startswith("M  CHG"):
                    atoms[idx - 1].formal_charge = val
                else:
                    atoms[idx - 1].isotope = val

    bond_sum = [0] * n_atoms
    n_arom = [0] * n_atoms
    for b in bonds:
        o = 1 if b.type is BondType.AROMATIC else int(b.type)
        for i in (b.begin, b.end):
            bond_sum[i] += o
            if b.type is BondType.AROMATIC:
                n_arom[i] += 1
    for i, atom in enumerate(atoms):
        atom.is_aromatic = n_arom[i] > 0
        atom.explicit_h_count = _implicit_h(atom, bond_sum[i], n_arom[i])

    cid = int(title) if title.isdigit() else None
    try:
        mol = Molecule(atoms, bonds, name=title or None, source_cid=cid)
        return finalize(mol, title)
    except (MoleculeError, SmilesError) as exc:
        raise SdfError(str(exc), first_line + 3) from None


def _data_fields(lines: list[str]) -> dict[str, str]:
    fields: dict[str, str] = {}
    k = 0
    while k < len(lines):
        line = lines[k]
        if line.startswith(">"):
            start, end = line.find("<"), line.find(">", 1)
            name = line[start + 1:line.rfind(">")] if start >= 0 else line[1:].strip()
            if start < 0 or end < 0:
                name = line[1:].strip()
            k += 1
            value = []
            while k < len(lines) and lines[k].strip() != "":
                value.append(lines[k])
                k += 1
            fields[name] = "\n".join(value)
        k += 1
    return fields


def _blocks(text: TextIO) -> Iterator[tuple[int, list[str]]]:
    block: list[str] = []
    start = 1
    n = 0
    for n, raw in enumerate(text, start=1):
        line = raw.rstrip("\r\n")
        if line.strip() == "$$$$":
            yield start, block
            block = []
            start = n + 1
        else:
            block.append(line)
    if any(l.strip() for l in block):
        yield start, block


def iter_sdf(stream: BinaryIO | TextIO) -> Iterator[tuple[Molecule, dict[str, str]] | SdfRecordError]:
    """Yield ``(molecule, data_fields)`` per block, or an error record for bad blocks."""
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    if not isinstance(stream, io.TextIOBase):
        stream = io.TextIOWrapper(stream, encoding="utf-8", errors="replace")
    for start, block in _blocks(stream):
        try:
            end = next((k for k, l in enumerate(block) if l.startswith("M  END")), None)
            if end is None:
                raise SdfError("missing 'M  END'", start + len(block))
            mol = parse_molblock(block[: end + 1], start)
        except SdfError as exc:
            yield SdfRecordError(start, exc.line, exc.reason)
            continue
        fields = _data_fields(block[end + 1:])
        comment = block[2].strip() if len(block) > 2 else ""
        if comment:
            fields.setdefault("_comment", comment)
        yield mol, fields


def parse_sdf(stream) -> tuple[list[tuple[Molecule, dict[str, str]]], list[SdfRecordError]]:
    """Read a whole SD stream; malformed blocks are skipped and reported."""
    records, errors = [], []
    for item in iter_sdf(stream):
        (errors if isinstance(item, SdfRecordError) else records).append(item)
    return records, errors


def write_molblock(mol: Molecule, title: str | None = None) -> str:
    if len(mol.atoms) > 999 or len(mol.bonds) > 999:
        raise ValueError("V2000 supports at most 999 atoms and bonds")
    if title is None:
        title = str(mol.source_cid) if mol.source_cid is not None else (mol.name or "")
    out = [title, "  vsbench", ""]
    out.append(f"{len(mol.atoms):3d}{len(mol.bonds):3d}  0  0  0  0  0  0  0  0999 V2000")
    # Kekulé orders keep the hydrogen count of atoms like pyrrole N recoverable.
    orders = mol.kekule_orders
    inv_charge = {v: k for k, v in _CHARGE_CODES.items() if k != 4}
    for a in mol.atoms:
        x, y, z = a.coordinates if a.coordinates is not None else (0.0, 0.0, 0.0)
        code = inv_charge.get(a.formal_charge, 0)
        out.append(f"{x:10.4f}{y:10.4f}{z:10.4f} {a.symbol:<3} 0{code:3d}  0  0  0  0  0  0  0  0  0  0")
    for b, order in zip(mol.bonds, orders):
        out.append(f"{b.begin + 1:3d}{b.end + 1:3d}{order:3d}  0")
    charged = [(i + 1, a.formal_charge) for i, a in enumerate(mol.atoms) if a.formal_charge]
    for p in range(0, len(charged), 8):
        chunk = charged[p:p + 8]
        out.append("M  CHG" + f"{len(chunk):3d}" + "".join(f" {i:3d} {q:3d}" for i, q in chunk))
    iso = [(i + 1, a.isotope) for i, a in enumerate(mol.atoms) if a.isotope]
    for p in range(0, len(iso), 8):
        chunk = iso[p:p + 8]
        out.append("M  ISO" + f"{len(chunk):3d}" + "".join(f" {i:3d} {m:3d}" for i, m in chunk))
    out.append("M  END")
    return "\n".join(out) + "\n"


def write_sdf(records, stream: TextIO) -> None:
    """Write ``(molecule, fields)`` pairs (or bare molecules) as an SD file."""
    for rec in records:
        mol, fields = rec if isinstance(rec, tuple) else (rec, {})
        stream.write(write_molblock(mol))
        for name, value in fields.items():
            if name.startswith("_"):
                continue
            stream.write(f"> <{name}>\n{value}\n\n")
        stream.write("$$$$\n")
