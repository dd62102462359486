"""Descriptor CSV (``cid,f0,...,f390``) and its layout sidecar."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .autocorr import DESCRIPTOR_LEN, LAYOUT_VERSION, descriptor_layout


def layout_path(csv_path: str | Path) -> Path:
    p = Path(csv_path)
    return p.with_name(p.name + ".layout.json")


def write_descriptor_csv(path: str | Path, rows: Iterable[tuple[object, np.ndarray]]) -> int:
    count = 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["cid"] + [f"f{i}" for i in range(DESCRIPTOR_LEN)])
        for cid, vec in rows:
            vec = np.asarray(vec, dtype=float)
            if vec.shape != (DESCRIPTOR_LEN,):
                raise ValueError(f"descriptor for cid {cid} has shape {vec.shape}")
            w.writerow([cid] + [repr(float(x)) for x in vec])
            count += 1
    sidecar = {
        "layout_version": LAYOUT_VERSION,
        "length": DESCRIPTOR_LEN,
        "blocks": {"scalars": [0, 23], "ac2d": [23, 151], "ac3d": [151, 391]},
        "autocorrelation": "raw sums of |P_i*P_j| over ordered pairs per sign class; not normalized by pair counts",
        "columns": descriptor_layout(),
    }
    layout_path(path).write_text(json.dumps(sidecar, indent=1) + "\n")
    return count


def read_descriptor_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    cids, rows = [], []
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if len(header) != DESCRIPTOR_LEN + 1 or header[0] != "cid":
            raise ValueError(f"{path}: not a {DESCRIPTOR_LEN}-column descriptor file")
        for row in r:
            if not row:
                continue
            cids.append(row[0])
            rows.append([float(x) for x in row[1:]])
    return cids, np.array(rows, dtype=float).reshape(len(rows), DESCRIPTOR_LEN)
