"""Dataset rows and the ``cid,inchi,smiles,label,activity_value`` CSV."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

DATASET_HEADER = ("cid", "inchi", "smiles", "label", "activity_value")
INACTIVE_ACTIVITY_UM = 1000.0


class DatasetError(ValueError):
    pass


@dataclass
class CompoundRecord:
    cid: int
    smiles: str
    inchi: str | None = None
    label: int | None = None
    activity_value: float | None = None  # µM

    def __post_init__(self):
        if self.label is not None and self.label not in (0, 1):
            raise DatasetError(f"cid {self.cid}: label must be 0 or 1")
        if self.activity_value is not None and not self.activity_value > 0:
            raise DatasetError(f"cid {self.cid}: activity value must be > 0 µM")


def _opt(text: str) -> str | None:
    text = text.strip()
    return text or None


def read_dataset_csv(path: str | Path) -> list[CompoundRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != DATASET_HEADER:
            raise DatasetError(f"{path}: expected header {','.join(DATASET_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise DatasetError(f"{path}:{lineno}: expected 5 fields, got {len(row)}")
            cid, inchi, smiles, label, value = row
            try:
                out.append(
                    CompoundRecord(
                        cid=int(cid),
                        smiles=smiles.strip(),
                        inchi=_opt(inchi),
                        label=int(label) if label.strip() else None,
                        activity_value=float(value) if value.strip() else None,
                    )
                )
            except ValueError as exc:
                raise DatasetError(f"{path}:{lineno}: {exc}") from None
    return out


def write_dataset_csv(path: str | Path, records: Iterable[CompoundRecord]) -> int:
    n = 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(DATASET_HEADER)
        for r in records:
            w.writerow([
                r.cid,
                r.inchi or "",
                r.smiles,
                "" if r.label is None else r.label,
                "" if r.activity_value is None else repr(float(r.activity_value)),
            ])
            n += 1
    return n


def labels_by_cid(records: Iterable[CompoundRecord]) -> dict[str, int]:
    return {str(r.cid): int(r.label) for r in records if r.label is not None}
