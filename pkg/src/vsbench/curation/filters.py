"""Record- and molecule-level curation filters."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from ..mol.canon import canonical_form
from ..mol.molecule import Molecule, MoleculeError
from ..mol.normalize import molecular_weight, split_fragments
from ..mol.perception import aromatize
from ..mol.smiles import SmilesError, parse_smiles
from ..physchem.crippen import crippen_logp_mr
from ..physchem.scalars import hbond_acceptors, hbond_donors
from ..smarts.catalog import Catalog
from .records import CompoundRecord
from .report import CurationReport

MIXTURE_MW_TOLERANCE = 5.0


@dataclass
class FilterDecision:
    keep: bool
    reason: str | None = None
    mol: Molecule | None = None


def canonical_key(smiles: str) -> str:
    """Canonical form of an aromatized parse, or the stripped text if it does not parse."""
    try:
        return canonical_form(aromatize(parse_smiles(smiles)))
    except (SmilesError, MoleculeError):
        return "unparsed:" + smiles.strip()


def dedupe(records: Iterable[CompoundRecord], report: CurationReport | None = None, keys=None):
    """Drop records sharing a cid, canonical SMILES or InChI with an earlier record.

    The first occurrence is kept.  When duplicates carry different labels
    the kept record is flagged for expert review.  ``keys`` may supply
    precomputed :func:`canonical_key` values, one per record.
    """
    report = report if report is not None else CurationReport()
    records = list(records)
    if keys is None:
        keys = [canonical_key(r.smiles) for r in records]
    sc = report.start("dedupe", len(records))
    by_cid: dict[int, int] = {}
    by_smiles: dict[str, int] = {}
    by_inchi: dict[str, int] = {}
    kept: list[CompoundRecord] = []
    conflicts: dict[int, set[int]] = {}
    for r, ckey in zip(records, keys):
        hit, how = None, None
        if r.cid in by_cid:
            hit, how = by_cid[r.cid], "cid"
        elif ckey in by_smiles:
            hit, how = by_smiles[ckey], "smiles"
        elif r.inchi and r.inchi in by_inchi:
            hit, how = by_inchi[r.inchi], "inchi"
        if hit is None:
            idx = len(kept)
            kept.append(r)
            by_cid[r.cid] = idx
            by_smiles.setdefault(ckey, idx)
            if r.inchi:
                by_inchi.setdefault(r.inchi, idx)
            continue
        first = kept[hit]
        report.remove(sc, r.cid, f"duplicate of cid {first.cid} (same {how})")
        if r.label is not None and first.label is not None and r.label != first.label:
            conflicts.setdefault(hit, set()).add(r.cid)
    for idx in sorted(conflicts):
        others = ", ".join(str(c) for c in sorted(conflicts[idx]))
        report.flag(sc, kept[idx].cid, f"label conflict with duplicate cid(s) {others}")
    return kept, report


def parser_filter(records: Iterable[CompoundRecord], report: CurationReport | None = None):
    """Keep records whose SMILES parses; returns ``(records, molecules, report)``."""
    report = report if report is not None else CurationReport()
    records = list(records)
    sc = report.start("parser", len(records))
    kept, mols = [], []
    for r in records:
        try:
            mol = parse_smiles(r.smiles)
        except SmilesError as exc:
            report.remove(sc, r.cid, f"parse error: {exc}")
            continue
        if not mol.atoms:
            report.remove(sc, r.cid, "parse error: empty SMILES")
            continue
        kept.append(r)
        mols.append(mol)
    return kept, mols, report


def has_carbon(mol: Molecule) -> bool:
    return any(a.element == 6 for a in mol.atoms)


def inorganic_filter(mol: Molecule) -> FilterDecision:
    """Remove molecules without any carbon atom."""
    if has_carbon(mol):
        return FilterDecision(True, mol=mol)
    return FilterDecision(False, "inorganic (no carbon)")


@dataclass
class LipinskiResult:
    passed: bool
    violations: list[str] = field(default_factory=list)
    values: dict[str, float] = field(default_factory=dict)


LIPINSKI_LIMITS = {"molecular_weight": 500.0, "logp": 5.0, "hbond_donors": 5, "hbond_acceptors": 10}


def lipinski_values(mol: Molecule) -> dict[str, float]:
    logp, _ = crippen_logp_mr(mol)
    return {
        "molecular_weight": molecular_weight(mol),
        "logp": logp,
        "hbond_donors": hbond_donors(mol),
        "hbond_acceptors": hbond_acceptors(mol),
    }


def lipinski(values: Molecule | dict[str, float], max_violations: int = 1) -> LipinskiResult:
    """Rule of five with inclusive limits; passes with at most one violation."""
    if isinstance(values, Molecule):
        values = lipinski_values(values)
    missing = [k for k in LIPINSKI_LIMITS if k not in values or values[k] is None]
    if missing:
        raise KeyError(f"druglikeness needs {', '.join(missing)} (no provider supplied it)")
    bad = [k for k, lim in LIPINSKI_LIMITS.items() if values[k] > lim]
    return LipinskiResult(len(bad) <= max_violations, bad, dict(values))


def handle_mixture(mol: Molecule, mw_tolerance: float = MIXTURE_MW_TOLERANCE) -> FilterDecision:
    """Resolve a multi-fragment record to one fragment or discard it.

    Identical fragments collapse to one copy.  Otherwise, when every pair of
    fragments is within ``mw_tolerance`` Da the mixture is discarded; else
    carbon-free fragments are dropped, the rest must pass the rule of five,
    and exactly one distinct fragment may survive.
    """
    frags = split_fragments(mol)
    if len(frags) == 1:
        return FilterDecision(True, mol=mol)
    keys = [canonical_form(aromatize(f)) for f in frags]
    if len(set(keys)) == 1:
        return FilterDecision(True, "identical fragments collapsed", frags[0])
    weights = [molecular_weight(f) for f in frags]
    max_diff = max(abs(a - b) for a, b in combinations(weights, 2))
    if max_diff <= mw_tolerance:
        return FilterDecision(False, f"mixture with fragment weights within {mw_tolerance:g} Da")
    survivors: dict[str, Molecule] = {}
    for f, key in zip(frags, keys):
        if has_carbon(f) and lipinski(f).passed:
            survivors.setdefault(key, f)
    if len(survivors) != 1:
        return FilterDecision(False, f"ambiguous mixture ({len(survivors)} drug-like organic fragments)")
    kept = next(iter(survivors.values()))
    return FilterDecision(True, f"kept 1 drug-like organic fragment of {len(frags)}", kept)


def optical_filter(records: Iterable[CompoundRecord], blocklist, report: CurationReport | None = None):
    """Drop cids known to interfere optically (e.g. autofluorescence)."""
    report = report if report is not None else CurationReport()
    records = list(records)
    sc = report.start("optical", len(records))
    block = {int(c) for c in blocklist}
    kept = []
    for r in records:
        if r.cid in block:
            report.remove(sc, r.cid, "optical interference blocklist")
        else:
            kept.append(r)
    return kept, report


def pains_catalog_filter(mol: Molecule, catalog: Catalog) -> FilterDecision:
    hit = catalog.first_match(mol)
    if hit is None:
        return FilterDecision(True, mol=mol)
    return FilterDecision(False, f"PAINS pattern {hit}")
