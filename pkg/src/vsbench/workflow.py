"""Corpus-level steps shared by the command line and the throughput check."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .curation.records import CompoundRecord, read_dataset_csv
from .descriptors.autocorr import full_descriptor
from .featurize.graph import GraphTensor, build_2d_graph, build_3d_graph
from .mol.molecule import Molecule, MoleculeError
from .mol.perception import aromatize
from .mol.sdf import SdfRecordError, iter_sdf
from .mol.smiles import SmilesError, parse_smiles
from .physchem.gasteiger import GasteigerError
from .physchem.properties import PropertyFile, PropertyFileError, atom_properties
from .physchem.vcharge import VChargeError

log = logging.getLogger(__name__)

CID_FIELDS = ("cid", "CID", "PUBCHEM_COMPOUND_CID")
_RECOVERABLE = (MoleculeError, GasteigerError, VChargeError, PropertyFileError, SmilesError, ValueError)


def resolve_jobs(jobs: int) -> int:
    return jobs if jobs > 0 else (os.cpu_count() or 1)


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1, chunk: int | None = None) -> list:
    """Order-preserving map; a process pool when ``jobs`` > 1."""
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = chunk or max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _sdf_cid(mol: Molecule, fields: dict[str, str], fallback: int) -> str:
    for key in CID_FIELDS:
        if fields.get(key, "").strip():
            return fields[key].strip()
    if mol.name and mol.name.strip():
        return mol.name.strip()
    return str(fallback)


def read_sdf_molecules(path: str | Path) -> tuple[list[tuple[str, Molecule]], list[SdfRecordError]]:
    """``(cid, molecule)`` pairs; the cid comes from a data field, else the title line.

    Kekulé rings are aromatized so SD input is perceived like parsed SMILES.
    """
    out, errors = [], []
    with open(path, "rb") as fh:
        for n, item in enumerate(iter_sdf(fh), start=1):
            if isinstance(item, SdfRecordError):
                errors.append(item)
                continue
            mol, fields = item
            cid = _sdf_cid(mol, fields, n)
            mol = aromatize(mol)
            if cid.isdigit():
                mol.source_cid = int(cid)
            out.append((cid, mol))
    return out, errors


def _parse_record(r: CompoundRecord):
    try:
        mol = parse_smiles(r.smiles)
    except SmilesError as exc:
        return str(r.cid), None, str(exc)
    mol.source_cid = r.cid
    return str(r.cid), mol, None


def read_molecules(path: str | Path, jobs: int = 1) -> tuple[list[tuple[str, Molecule]], list[str]]:
    """Molecules from an SD file or a dataset CSV; returns ``(pairs, error messages)``."""
    path = Path(path)
    if path.suffix.lower() in (".sdf", ".sd", ".mol"):
        pairs, errs = read_sdf_molecules(path)
        return pairs, [str(e) for e in errs]
    records = read_dataset_csv(path)
    pairs, errors = [], []
    for cid, mol, err in parallel_map(_parse_record, records, jobs):
        if mol is None:
            errors.append(f"cid {cid}: {err}")
        else:
            pairs.append((cid, mol))
    return pairs, errors


_PROPERTY_SOURCE: PropertyFile | None = None


def _init_properties(path: str | None) -> None:
    global _PROPERTY_SOURCE
    _PROPERTY_SOURCE = PropertyFile.read(path) if path else None


def _props(cid: str, mol: Molecule):
    if _PROPERTY_SOURCE is None:
        return atom_properties(mol)
    return atom_properties(mol, "file", source=_PROPERTY_SOURCE, cid=cid)


def _featurize_one(args):
    cid, mol, kind = args
    try:
        props = _props(cid, mol)
        g = build_3d_graph(mol, props) if kind == "3d" else build_2d_graph(mol, props)
        return cid, g, None
    except _RECOVERABLE as exc:
        return cid, None, f"{type(exc).__name__}: {exc}"


def _describe_one(args):
    cid, mol = args
    try:
        return cid, full_descriptor(mol, _props(cid, mol)).to_array(), None
    except _RECOVERABLE as exc:
        return cid, None, f"{type(exc).__name__}: {exc}"


def _pool_map(fn, items, jobs, properties):
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(items) < 2:
        _init_properties(properties)
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_properties, initargs=(properties,)) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def featurize_molecules(
    pairs: Iterable[tuple[str, Molecule]], kind: str = "2d", jobs: int = 1, properties: str | None = None
) -> tuple[list[tuple[str, GraphTensor]], list[str]]:
    """Graphs per molecule; molecules that fail are reported, not raised."""
    if kind not in ("2d", "3d"):
        raise ValueError(f"graph kind must be 2d or 3d, not {kind!r}")
    results = _pool_map(_featurize_one, [(c, m, kind) for c, m in pairs], jobs, properties)
    graphs = [(c, g) for c, g, _ in results if g is not None]
    errors = [f"cid {c}: {e}" for c, g, e in results if g is None]
    return graphs, errors


def describe_molecules(
    pairs: Iterable[tuple[str, Molecule]], jobs: int = 1, properties: str | None = None
) -> tuple[list[tuple[str, np.ndarray]], list[str]]:
    results = _pool_map(_describe_one, list(pairs), jobs, properties)
    rows = [(c, v) for c, v, _ in results if v is not None]
    errors = [f"cid {c}: {e}" for c, v, e in results if v is None]
    return rows, errors


def hydrogen_mode(pairs: Sequence[tuple[str, Molecule]]) -> str:
    """``explicit`` when any input molecule carries hydrogen atoms as nodes."""
    has_h = any(a.element == 1 for _, m in pairs for a in m.atoms)
    return "explicit" if has_h else "implicit"
