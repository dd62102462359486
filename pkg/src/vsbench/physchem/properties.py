"""Per-atom property bundle and the native / property-file providers."""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from ..mol.molecule import Molecule
from .crippen import crippen_contributions
from .estate import estate_indices
from .gasteiger import gasteiger_charges
from .labute import labute_contributions
from .tpsa import tpsa_contributions
from .vcharge import v_charges

PROPERTY_FILE_HEADER = ("cid", "atom_index", "prop_name", "value")


class PropertyFileError(KeyError):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


@dataclass
class AtomProperties:
    """Arrays aligned with the molecule's atom order.

    ``crippen_h_logp`` / ``crippen_h_mr`` hold the contribution of the
    implicit hydrogens carried by each atom; the per-atom Crippen values
    themselves cover the atom only.
    """

    gasteiger_charge: np.ndarray
    gasteiger_h_charge: np.ndarray
    crippen_logp: np.ndarray
    crippen_mr: np.ndarray
    tpsa_contrib: np.ndarray
    labute_asa_contrib: np.ndarray
    estate_index: np.ndarray
    sigma_charge: np.ndarray
    v_charge: np.ndarray
    crippen_h_logp: np.ndarray
    crippen_h_mr: np.ndarray

    def __len__(self) -> int:
        return len(self.gasteiger_charge)

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_dict(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in self.names()}


def native_properties(mol: Molecule) -> AtomProperties:
    q, qh = gasteiger_charges(mol)
    logp, mr, h_logp, h_mr = crippen_contributions(mol)
    asa, _ = labute_contributions(mol)
    arr = lambda x: np.asarray(x, dtype=float)  # noqa: E731
    return AtomProperties(
        gasteiger_charge=arr(q),
        gasteiger_h_charge=arr(qh),
        crippen_logp=arr(logp),
        crippen_mr=arr(mr),
        tpsa_contrib=arr(tpsa_contributions(mol)),
        labute_asa_contrib=arr(asa),
        estate_index=estate_indices(mol),
        sigma_charge=arr(q),
        v_charge=v_charges(mol),
        crippen_h_logp=arr(h_logp),
        crippen_h_mr=arr(h_mr),
    )


class PropertyFile:
    """Per-atom values keyed by ``(cid, atom_index, prop_name)``."""

    def __init__(self, values: Mapping[str, dict[tuple[int, str], float]] | None = None):
        self._values: dict[str, dict[tuple[int, str], float]] = dict(values or {})

    @classmethod
    def read(cls, path: str | Path) -> "PropertyFile":
        values: dict[str, dict[tuple[int, str], float]] = {}
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or tuple(h.strip() for h in header) != PROPERTY_FILE_HEADER:
                raise ValueError(f"{path}: expected header {','.join(PROPERTY_FILE_HEADER)}")
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 4:
                    raise ValueError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
                cid, idx, name, value = row
                try:
                    values.setdefault(cid.strip(), {})[(int(idx), name.strip())] = float(value)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad atom index or value") from None
        return cls(values)

    def add(self, cid, props: AtomProperties) -> None:
        table = self._values.setdefault(str(cid), {})
        for name, arr in props.as_dict().items():
            for i, v in enumerate(arr):
                table[(i, name)] = float(v)

    def write(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(PROPERTY_FILE_HEADER)
            for cid, table in self._values.items():
                for (idx, name), value in sorted(table.items()):
                    w.writerow([cid, idx, name, repr(value)])

    def __contains__(self, cid) -> bool:
        return str(cid) in self._values

    def get(self, cid, n_atoms: int) -> AtomProperties:
        table = self._values.get(str(cid))
        if table is None:
            raise PropertyFileError(f"no property rows for cid {cid}")
        cols = {}
        for name in AtomProperties.names():
            col = np.empty(n_atoms)
            for i in range(n_atoms):
                v = table.get((i, name))
                if v is None:
                    raise PropertyFileError(f"missing property {name!r} for cid {cid}, atom {i}")
                col[i] = v
            cols[name] = col
        return AtomProperties(**cols)


def write_property_file(path: str | Path, items: Iterable[tuple[object, AtomProperties]]) -> None:
    pf = PropertyFile()
    for cid, props in items:
        pf.add(cid, props)
    pf.write(path)


def atom_properties(
    mol: Molecule, provider: str = "native", *, source: PropertyFile | None = None, cid=None
) -> AtomProperties:
    """Compute (``native``) or look up (``file``) the per-atom properties.

    File mode needs ``source`` and a ``cid``; the molecule's ``source_cid``
    is used when ``cid`` is not given.
    """
    if provider == "native":
        return native_properties(mol)
    if provider == "file":
        if source is None:
            raise ValueError("file provider needs a PropertyFile source")
        key = cid if cid is not None else mol.source_cid
        if key is None:
            raise ValueError("file provider needs a cid")
        return source.get(key, len(mol.atoms))
    raise ValueError(f"unknown property provider {provider!r}")
