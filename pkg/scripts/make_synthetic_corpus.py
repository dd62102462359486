"""Write a seeded synthetic corpus: an SD file with 3D positions plus a dataset CSV.

Usage: python scripts/make_synthetic_corpus.py OUT_DIR [N] [SEED] [ACTIVE_FRACTION]
"""

import sys
from pathlib import Path

import numpy as np

from vsbench.curation.records import CompoundRecord, write_dataset_csv
from vsbench.mol.sdf import write_sdf
from vsbench.synthetic import random_molecules


def main(out: str, n: int = 1000, seed: int = 0, active_fraction: float = 0.05) -> None:
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    mols = random_molecules(n, seed=seed, coordinates=True)
    rng = np.random.default_rng(seed + 1)
    labels = (rng.random(n) < active_fraction).astype(int)
    with open(out_dir / "corpus.sdf", "w") as fh:
        write_sdf(((m, {"cid": str(cid)}) for cid, _, m in mols), fh)
    records = [CompoundRecord(cid, smi, None, int(y), None) for (cid, smi, _), y in zip(mols, labels)]
    write_dataset_csv(out_dir / "dataset.csv", records)
    print(f"{n} molecules, {int(labels.sum())} labelled active -> {out_dir}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0], *(int(a) for a in args[1:3]), *(float(a) for a in args[3:4]))
