"""End-to-end curation: record steps run in the driver, molecule steps in workers.

Molecule-level steps (parse, inorganic, mixture, neutralize, aromatize,
PAINS catalog, druglikeness) are pure per record, so each record is pushed
through all of them once, in configured order, stopping at the first
rejection.  The driver then replays the configured step order, applying
record-level steps (dedupe, hierarchy, FoH, optical) to the survivors and
booking each molecule-level rejection at its step.  The report is the only
shared state and is written by the driver alone.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path

from ..mol.canon import canonical_form
from ..mol.molecule import MoleculeError
from ..mol.normalize import neutralize
from ..mol.perception import aromatize
from ..mol.smiles import SmilesError, parse_smiles
from ..smarts.catalog import load_catalog
from .filters import (
    MIXTURE_MW_TOLERANCE,
    canonical_key,
    dedupe,
    handle_mixture,
    inorganic_filter,
    lipinski,
    optical_filter,
    pains_catalog_filter,
)
from .hierarchy import activity_values, evaluate_hierarchy, load_hierarchy
from .promiscuity import FOH_THRESHOLD, PromiscuityTable, foh
from .records import INACTIVE_ACTIVITY_UM, CompoundRecord
from .report import CurationReport

DEFAULT_STEPS = (
    "dedupe",
    "hierarchy",
    "parser",
    "inorganic",
    "mixture",
    "neutralize",
    "aromatize",
    "foh",
    "optical",
    "pains",
    "lipinski",
)
RECORD_STEPS = frozenset({"dedupe", "hierarchy", "foh", "optical"})
MOLECULE_STEPS = frozenset({"parser", "inorganic", "mixture", "neutralize", "aromatize", "pains", "lipinski"})


class CurationError(ValueError):
    pass


@dataclass
class CurationConfig:
    steps: list[str] = field(default_factory=lambda: list(DEFAULT_STEPS))
    hierarchy: str | None = None  # TOML hierarchy spec
    promiscuity_results: str | None = None  # cid,aid,outcome,assay_size
    promiscuity_targets: str | None = None  # aid,target
    promiscuity_identity: str | None = None  # target_a,target_b,percent_identity
    foh_threshold: float = FOH_THRESHOLD
    optical_blocklist: str | None = None  # one cid per line
    pains_catalog: str | None = None  # None: bundled catalog
    mixture_mw_tolerance: float = MIXTURE_MW_TOLERANCE
    lipinski_max_violations: int = 1
    inactive_activity_um: float = INACTIVE_ACTIVITY_UM
    jobs: int = 1

    def validate(self) -> None:
        unknown = [s for s in self.steps if s not in RECORD_STEPS | MOLECULE_STEPS]
        if unknown:
            raise CurationError(f"unknown curation step(s): {', '.join(unknown)}")
        if len(set(self.steps)) != len(self.steps):
            raise CurationError("curation steps must not repeat")
        if "parser" not in self.steps:
            raise CurationError("the parser step cannot be disabled")
        first_mol = min(self.steps.index(s) for s in self.steps if s in MOLECULE_STEPS)
        if self.steps[first_mol] != "parser":
            raise CurationError(f"step {self.steps[first_mol]} must come after the parser")
        for name in ("hierarchy", "promiscuity_results", "promiscuity_targets",
                     "promiscuity_identity", "optical_blocklist", "pains_catalog"):
            path = getattr(self, name)
            if path is not None and not Path(path).exists():
                raise CurationError(f"{name}: resource file {path} not found")


@dataclass(frozen=True)
class _MolOutcome:
    key: str  # canonical key of the raw SMILES, for dedupe
    failed_step: str | None
    reason: str | None
    smiles: str | None  # canonical SMILES of the curated structure
    modified: tuple[str, ...]
    notes: tuple[tuple[str, str], ...]  # (step, note) for expert review


@lru_cache(maxsize=4)
def _catalog(path: str | None):
    return load_catalog(path)


def _curate_molecule(smiles: str, steps: tuple[str, ...], cfg: CurationConfig) -> _MolOutcome:
    key = canonical_key(smiles)
    modified, notes = [], []
    mol = None

    def fail(step, reason):
        return _MolOutcome(key, step, reason, None, tuple(modified), tuple(notes))

    for step in steps:
        if step == "parser":
            try:
                mol = parse_smiles(smiles)
            except SmilesError as exc:
                return fail(step, f"parse error: {exc}")
            if not mol.atoms:
                return fail(step, "parse error: empty SMILES")
            continue
        if mol is None:
            raise CurationError(f"step {step} runs before the parser")
        try:
            if step == "inorganic":
                d = inorganic_filter(mol)
                if not d.keep:
                    return fail(step, d.reason)
            elif step == "mixture":
                d = handle_mixture(mol, cfg.mixture_mw_tolerance)
                if not d.keep:
                    return fail(step, d.reason)
                if d.mol is not mol:
                    modified.append(step)
                    notes.append((step, d.reason))
                    mol = d.mol
            elif step == "neutralize":
                new = neutralize(mol)
                if new is not mol:
                    modified.append(step)
                    mol = new
            elif step == "aromatize":
                new = aromatize(mol)
                if [b.type for b in new.bonds] != [b.type for b in mol.bonds]:
                    modified.append(step)
                mol = new
            elif step == "pains":
                d = pains_catalog_filter(mol, _catalog(cfg.pains_catalog))
                if not d.keep:
                    return fail(step, d.reason)
            elif step == "lipinski":
                res = lipinski(mol, cfg.lipinski_max_violations)
                if not res.passed:
                    return fail(step, "druglikeness: exceeds " + ", ".join(res.violations))
        except MoleculeError as exc:
            return fail(step, f"structure error: {exc}")
    return _MolOutcome(key, None, None, canonical_form(mol), tuple(modified), tuple(notes))


def _curate_chunk(args):
    smiles_list, steps, cfg = args
    return [_curate_molecule(s, steps, cfg) for s in smiles_list]


def _molecule_outcomes(records: list[CompoundRecord], cfg: CurationConfig) -> list[_MolOutcome]:
    steps = tuple(s for s in cfg.steps if s in MOLECULE_STEPS)
    smiles = [r.smiles for r in records]
    jobs = cfg.jobs if cfg.jobs > 0 else (os.cpu_count() or 1)
    if jobs == 1 or len(smiles) < 64:
        return _curate_chunk((smiles, steps, cfg))
    size = max(64, -(-len(smiles) // (jobs * 8)))
    chunks = [(smiles[i:i + size], steps, cfg) for i in range(0, len(smiles), size)]
    out: list[_MolOutcome] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_curate_chunk, chunks):
            out.extend(part)
    return out


def _read_blocklist(path: str) -> set[int]:
    cids = set()
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line and line != "cid":
            cids.add(int(line))
    return cids


def run_pipeline(records, config: CurationConfig | None = None):
    """Curate ``records``; returns ``(curated records, CurationReport)``.

    Steps without their resource (no hierarchy spec, promiscuity table or
    optical blocklist) are recorded as skipped.  Output SMILES are canonical;
    InChI is carried over only when the structure was not modified.
    """
    cfg = config or CurationConfig()
    cfg.validate()
    report = CurationReport()
    records = list(records)
    outcomes = _molecule_outcomes(records, cfg)
    alive = list(range(len(records)))  # indices into records/outcomes
    labels = {i: r.label for i, r in enumerate(records)}
    values = {i: r.activity_value for i, r in enumerate(records)}

    for step in cfg.steps:
        if step == "dedupe":
            kept, _ = dedupe([records[i] for i in alive], report, keys=[outcomes[i].key for i in alive])
            kept_ids = {id(r) for r in kept}
            alive = [i for i in alive if id(records[i]) in kept_ids]
        elif step == "hierarchy":
            if cfg.hierarchy is None:
                report.start(step, len(alive), skipped=True)
                continue
            h = load_hierarchy(cfg.hierarchy)
            assigned = evaluate_hierarchy(h)
            screen_values = activity_values(h, assigned)
            sc = report.start(step, len(alive))
            survivors = []
            for i in alive:
                cid = records[i].cid
                if cid not in assigned:
                    report.remove(sc, cid, "not labelled by the screen hierarchy")
                    continue
                labels[i] = assigned[cid]
                values[i] = screen_values.get(cid, values[i] if assigned[cid] == 1 else None)
                survivors.append(i)
            alive = survivors
        elif step == "foh":
            if cfg.promiscuity_results is None:
                report.start(step, len(alive), skipped=True)
                continue
            table = PromiscuityTable.read(cfg.promiscuity_results, cfg.promiscuity_targets, cfg.promiscuity_identity)
            sc = report.start(step, len(alive))
            survivors = []
            for i in alive:
                f = foh(records[i].cid, table)
                if f is not None and f > cfg.foh_threshold:
                    report.remove(sc, records[i].cid, f"frequency of hits {f:.3f} > {cfg.foh_threshold:g}")
                else:
                    survivors.append(i)
            alive = survivors
        elif step == "optical":
            if cfg.optical_blocklist is None:
                report.start(step, len(alive), skipped=True)
                continue
            kept, _ = optical_filter([records[i] for i in alive], _read_blocklist(cfg.optical_blocklist), report)
            kept_ids = {id(r) for r in kept}
            alive = [i for i in alive if id(records[i]) in kept_ids]
        else:
            sc = report.start(step, len(alive))
            survivors = []
            for i in alive:
                o = outcomes[i]
                if o.failed_step == step:
                    report.remove(sc, records[i].cid, o.reason)
                    continue
                if step in o.modified:
                    sc.modified += 1
                for note_step, note in o.notes:
                    if note_step == step:
                        report.flag(sc, records[i].cid, note)
                survivors.append(i)
            alive = survivors

    out = []
    for i in alive:
        r, o = records[i], outcomes[i]
        label = labels[i]
        value = values[i]
        if label == 0 and value is None:
            value = cfg.inactive_activity_um
        out.append(replace(
            r,
            smiles=o.smiles,
            inchi=r.inchi if not o.modified else None,
            label=label,
            activity_value=value,
        ))
    n_act = sum(1 for r in out if r.label == 1)
    n_inact = sum(1 for r in out if r.label == 0)
    report.meta = {
        "actives": n_act,
        "inactives": n_inact,
        "active_percent": round(100.0 * n_act / (n_act + n_inact), 4) if n_act + n_inact else 0.0,
    }
    report.check_telescoping()
    return out, report
