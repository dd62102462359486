"""Synthesize PubChem-style assay tables for the M1 agonist screening cascade.

Counts that are published: 63,676 compounds tested in the primary screen,
1,665 primary actives, a final set of 164 actives and 60,542 inactives.
The confirmatory / counter-screen split (200 confirmed, 36 of those active
in the counter screen) is not published and is chosen here so that
``active(1488) - active(1741)`` leaves 164.

Usage: python scripts/make_aid1798_fixture.py tests/data/pubchem
"""

import csv
import gzip
import io
import sys
from pathlib import Path

import numpy as np

N_PRIMARY = 63_676
N_PRIMARY_ACTIVE = 1_665
N_INACTIVE = 60_542
N_CONFIRMED = 200
N_COUNTER_ACTIVE = 36
HEADER = ["PUBCHEM_RESULT_TAG", "PUBCHEM_SID", "PUBCHEM_CID", "PUBCHEM_ACTIVITY_OUTCOME",
          "PUBCHEM_ACTIVITY_SCORE", "Potency"]
DESCRIPTOR_ROWS = [
    ["RESULT_TYPE", "", "", "", "", "FLOAT"],
    ["RESULT_DESCR", "", "", "", "", "Concentration at half-maximal response"],
    ["RESULT_UNIT", "", "", "", "", "MICROMOLAR"],
]


def table(rows) -> bytes:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(DESCRIPTOR_ROWS)
    for i, (cid, outcome, potency) in enumerate(rows, start=1):
        score = 40 if outcome == "Active" else 0
        w.writerow([i, 10_000_000 + cid, cid, outcome, score, "" if potency is None else f"{potency:.4g}"])
    return out.getvalue().encode()


def main(root: str) -> None:
    rng = np.random.default_rng(1798)
    cids = np.sort(rng.choice(np.arange(1_000, 60_000_000), size=N_PRIMARY, replace=False))
    order = rng.permutation(N_PRIMARY)
    active = cids[order[:N_PRIMARY_ACTIVE]]
    inactive = cids[order[N_PRIMARY_ACTIVE:N_PRIMARY_ACTIVE + N_INACTIVE]]
    status = {int(c): "Inactive" for c in inactive}
    status.update({int(c): "Active" for c in active})
    primary = [(int(c), status.get(int(c), "Inconclusive"), None) for c in cids]

    confirmed = set(rng.choice(active, size=N_CONFIRMED, replace=False).tolist())
    potency = {c: float(10 ** rng.uniform(-1.5, 1.5)) for c in confirmed}
    confirm = [(int(c), "Active" if int(c) in confirmed else "Inactive", potency.get(int(c))) for c in np.sort(active)]

    counter_hits = set(rng.choice(sorted(confirmed), size=N_COUNTER_ACTIVE, replace=False).tolist())
    counter = [(c, "Active" if c in counter_hits else "Inactive", None) for c in sorted(confirmed)]

    out = Path(root) / "assay"
    out.mkdir(parents=True, exist_ok=True)
    for aid, rows in ((626, primary), (1488, confirm), (1741, counter)):
        data = table(rows)
        (out / f"{aid}.csv.gz").write_bytes(gzip.compress(data, mtime=0))
        print(aid, len(rows), "rows")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/pubchem")
