"""Regenerate src/vsbench/data/crippen.txt from RDKit (development only).

RDKit computes Crippen contributions from a parameter table compiled into
its descriptor library, which is newer than the Crippen.txt data file it
also ships.  The compiled copy is extracted here so that our values agree
with RDKit's MolLogP/MolMR.
"""

import glob
import os
import re
import subprocess
from pathlib import Path

import rdkit

ROW = re.compile(r"^([A-Z][A-Za-z]*[0-9]*)\t(\S+)\t(-?[0-9.]+)\t(-?[0-9.]*)\t?.*$")

libdir = Path(os.path.dirname(rdkit.__file__)).parent / "rdkit.libs"
lib = glob.glob(str(libdir / "libRDKitDescriptors*"))[0]
text = subprocess.run(["strings", "-n", "3", lib], capture_output=True, text=True, check=True).stdout
rows = []
for line in text.splitlines():
    m = ROW.match(line)
    if m and m.group(2).startswith("["):
        label, smarts, logp, mr = m.groups()
        rows.append((label, smarts, logp, mr or "0"))
assert len(rows) == 110, len(rows)

dst = Path(__file__).resolve().parents[1] / "src" / "vsbench" / "data" / "crippen.txt"
with open(dst, "w") as out:
    out.write("# version 2\n")
    out.write("# Wildman-Crippen atom types (J. Chem. Inf. Comput. Sci. 1999, 39, 868)\n")
    out.write("# SMARTS definitions as used by RDKit (BSD license); first match wins\n")
    out.write("# type<TAB>SMARTS<TAB>logP<TAB>MR\n")
    for r in rows:
        out.write("\t".join(r) + "\n")
print(f"wrote {len(rows)} atom types to {dst}")
