"""Regenerate src/vsbench/data/pains.txt from RDKit's wehi_pains.csv.

Needs RDKit installed (development only).  Usage:
    python scripts/build_pains_catalog.py
"""

import csv
import os
import re
from pathlib import Path

import rdkit

src = Path(os.path.dirname(rdkit.__file__)) / "Data" / "Pains" / "wehi_pains.csv"
dst = Path(__file__).resolve().parents[1] / "src" / "vsbench" / "data" / "pains.txt"

rows = []
with open(src, newline="") as fh:
    for smarts, reg in csv.reader(fh):
        m = re.search(r"regId=([^>]+)>", reg)
        rows.append((smarts.strip(), m.group(1) if m else reg))

with open(dst, "w") as out:
    out.write("# PAINS substructure catalog (families A, B and C), 480 patterns\n")
    out.write("# Baell & Holloway, J. Med. Chem. 2010; SMARTS as distributed with RDKit (BSD license)\n")
    out.write("# format: SMARTS<TAB>name\n")
    for smarts, name in rows:
        out.write(f"{smarts}\t{name}\n")
print(f"wrote {len(rows)} patterns to {dst}")
