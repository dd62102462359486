"""Command-line entry point: ``vsbench <subcommand> [options]``.

Every subcommand writes its outputs under ``--out`` together with
``resolved_config.toml``.  Timestamps go to ``run.log`` only, so re-running
with the same inputs and seed reproduces every other file byte for byte.

Exit codes: 0 success, 1 runtime failure (one ``vsbench: error[<Category>]:``
line on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import shutil
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .bench.baseline import BaselineConfig, train_baseline
from .bench.evaluate import METRICS, MetricReport, evaluate_predictions
from .bench.plot import bar_chart_svg
from .config import dump_toml, from_dict, load_toml, to_dict
from .curation.hierarchy import activity_values, evaluate_hierarchy, load_hierarchy
from .curation.pipeline import CurationConfig, run_pipeline
from .curation.records import CompoundRecord, read_dataset_csv, write_dataset_csv
from .descriptors.autocorr import descriptor_layout
from .descriptors.io import read_descriptor_csv, write_descriptor_csv
from .featurize.store import write_graph_store
from .metrics.io import write_predictions
from .splits.cv import make_cv_folds
from .splits.plan import read_split_file, write_split_file
from .splits.scaffold import bm_scaffold, scaffold_split
from .workflow import describe_molecules, featurize_molecules, hydrogen_mode, read_molecules

log = logging.getLogger("vsbench")

SUBCOMMANDS = ("fetch", "curate", "hierarchy", "split", "featurize", "describe", "train-baseline", "evaluate", "report")


@dataclass
class DataConfig:
    dataset: str | None = None  # cid,inchi,smiles,label,activity_value
    sdf: str | None = None  # structures with coordinates
    hierarchy: str | None = None  # screen hierarchy spec (TOML)
    compounds: str | None = None  # cid,smiles,inchi
    properties: str | None = None  # per-atom property file; unset computes natively
    fixture_dir: str | None = None
    cache_dir: str | None = None
    aids: list[int] = field(default_factory=list)


@dataclass
class SplitConfig:
    scheme: str = "adapted_cv"  # or "scaffold"
    k: int = 5
    ratio: list[float] = field(default_factory=lambda: [3.0, 1.0, 1.0])
    keep_exocyclic: bool = False


@dataclass
class FeatureConfig:
    kind: str = "2d"  # or "3d"


@dataclass
class MetricConfig:
    n_shuffles: int = 10


@dataclass
class RunConfig:
    version_tag: str = ""
    seed: int = 0
    jobs: int = 1
    out: str = "out"
    data: DataConfig = field(default_factory=DataConfig)
    curation: CurationConfig = field(default_factory=CurationConfig)
    split: SplitConfig = field(default_factory=SplitConfig)
    features: FeatureConfig = field(default_factory=FeatureConfig)
    baseline: BaselineConfig = field(default_factory=BaselineConfig)
    metrics: MetricConfig = field(default_factory=MetricConfig)


_DATA_PATHS = ("dataset", "sdf", "hierarchy", "compounds", "properties", "fixture_dir", "cache_dir")
_CURATION_PATHS = ("hierarchy", "promiscuity_results", "promiscuity_targets", "promiscuity_identity",
                   "optical_blocklist", "pains_catalog")


def load_run_config(path: str | Path | None) -> RunConfig:
    """Read a run config; relative paths resolve against the config file's directory."""
    if path is None:
        return RunConfig()
    path = Path(path)
    cfg = from_dict(RunConfig, load_toml(path))
    base = path.parent
    for section, names in ((cfg.data, _DATA_PATHS), (cfg.curation, _CURATION_PATHS)):
        for name in names:
            v = getattr(section, name)
            if v is not None and not Path(v).is_absolute():
                setattr(section, name, str(base / v))
    return cfg


class CliError(RuntimeError):
    """Runtime failure with a category for the one-line error message."""

    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


def _require(value, flag: str, key: str):
    if value is None:
        raise CliError("MissingInput", f"need {flag} (or {key} in the config file)")
    return value


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="run configuration (TOML)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int, help="random seed")
    p.add_argument("--jobs", type=int, help="worker processes (0 = all cores)")
    p.add_argument("--version-tag", dest="version_tag", help="dataset version string for reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vsbench", description="Virtual-screening benchmark toolkit")
    parser.add_argument("--version", action="version", version=f"vsbench {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True

    p = sub.add_parser("fetch", help="download assay tables and compound identifiers")
    _common(p)
    p.add_argument("--aids", type=int, nargs="+", help="assay ids")
    p.add_argument("--cids", help="file of compound ids (one per line) to exchange for SMILES/InChI")
    p.add_argument("--fixture-dir", dest="fixture_dir", help="serve requests from a fixture directory")
    p.add_argument("--cache-dir", dest="cache_dir", help="cache root (default: the output directory)")

    p = sub.add_parser("hierarchy", help="label compounds from a screen hierarchy")
    _common(p)
    p.add_argument("--spec", help="hierarchy spec (TOML)")
    p.add_argument("--compounds", help="cid,smiles,inchi table; writes dataset.csv when given")

    p = sub.add_parser("curate", help="run the curation pipeline")
    _common(p)
    p.add_argument("--dataset", help="dataset CSV")

    p = sub.add_parser("split", help="make cross-validation or scaffold splits")
    _common(p)
    p.add_argument("--dataset", help="dataset CSV")
    p.add_argument("--scheme", choices=("adapted_cv", "scaffold"))
    p.add_argument("--k", type=int, help="number of folds")

    p = sub.add_parser("featurize", help="build 2D or 3D graph tensors")
    _common(p)
    p.add_argument("--dataset", help="dataset CSV (2D only)")
    p.add_argument("--sdf", help="SD file")
    p.add_argument("--kind", choices=("2d", "3d"))
    p.add_argument("--properties", help="per-atom property file")

    p = sub.add_parser("describe", help="compute the 391-dimensional descriptor")
    _common(p)
    p.add_argument("--sdf", help="SD file with 3D coordinates")
    p.add_argument("--properties", help="per-atom property file")

    p = sub.add_parser("train-baseline", help="train the linear baseline per split plan")
    _common(p)
    p.add_argument("--descriptors", required=True, help="descriptor CSV")
    p.add_argument("--dataset", help="dataset CSV (labels)")
    p.add_argument("--split", required=True, help="split CSV")

    p = sub.add_parser("evaluate", help="score prediction files")
    _common(p)
    p.add_argument("--pred", nargs="+", required=True, help="prediction TSV, one per plan or one for all")
    p.add_argument("--dataset", help="dataset CSV (labels)")
    p.add_argument("--split", required=True, help="split CSV")

    p = sub.add_parser("report", help="tabulate and plot metric reports")
    _common(p)
    p.add_argument("--metrics", nargs="+", required=True, help="metrics.json files")
    p.add_argument("--names", nargs="+", help="series names (default: file stems)")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_run_config(args.config)
    for name in ("out", "seed", "jobs", "version_tag"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    d = cfg.data
    for flag, attr in (("dataset", "dataset"), ("sdf", "sdf"), ("spec", "hierarchy"), ("compounds", "compounds"),
                       ("properties", "properties"), ("fixture_dir", "fixture_dir"), ("cache_dir", "cache_dir")):
        v = getattr(args, flag, None)
        if v is not None:
            setattr(d, attr, v)
    if getattr(args, "aids", None):
        d.aids = list(args.aids)
    if getattr(args, "scheme", None):
        cfg.split.scheme = args.scheme
    if getattr(args, "k", None) is not None:
        cfg.split.k = args.k
    if getattr(args, "kind", None):
        cfg.features.kind = args.kind
    cfg.curation.jobs = cfg.jobs
    cfg.baseline.seed = cfg.seed
    return cfg


def _labels(dataset: str) -> dict[str, int]:
    return {str(r.cid): int(r.label) for r in read_dataset_csv(dataset) if r.label is not None}


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# subcommands ----------------------------------------------------------


def cmd_fetch(cfg: RunConfig, args, out: Path) -> int:
    from .pubchem.client import PubChemClient

    if not cfg.data.aids and not args.cids:
        raise CliError("MissingInput", "need --aids and/or --cids")
    cache = Path(cfg.data.cache_dir) if cfg.data.cache_dir else out
    client = PubChemClient(cache, fixture_dir=cfg.data.fixture_dir)
    for aid in cfg.data.aids:
        table = client.fetch_assay(aid)
        src = client.assay_cache_path(aid)
        dst = out / "assay" / f"{aid}.csv"
        if src.resolve() != dst.resolve():
            dst.parent.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(src, dst)
        c = table.counts()
        print(f"aid {aid}: {len(table.outcomes)} compounds, {c['active']} active, "
              f"{c['inactive']} inactive, {c['inconclusive']} inconclusive")
    if args.cids:
        cids = [int(x) for x in Path(args.cids).read_text().split() if x.strip().isdigit()]
        res = client.exchange_identifiers(cids)
        _write_csv(out / "compounds.csv", ["cid", "smiles", "inchi"],
                   [[c, s, i] for c, (s, i) in res.found.items()])
        (out / "missing_cids.txt").write_text("".join(f"{c}\n" for c in res.missing))
        print(f"identifiers: {len(res.found)} found, {len(res.missing)} missing")
    return 0


def cmd_hierarchy(cfg: RunConfig, args, out: Path) -> int:
    spec = _require(cfg.data.hierarchy, "--spec", "data.hierarchy")
    h = load_hierarchy(spec)
    labels = evaluate_hierarchy(h)
    values = activity_values(h, labels)
    inactive_value = cfg.curation.inactive_activity_um
    rows = []
    for c, y in labels.items():
        v = values.get(c) if y == 1 else inactive_value
        rows.append([c, y, "" if v is None else repr(v)])
    _write_csv(out / "labels.csv", ["cid", "label", "activity_value"], rows)
    n_act = sum(labels.values())
    summary = {
        "screens": {str(a): {"role": s.role, "tested": s.n_tested if s.n_tested is not None else len(s.outcomes)} for a, s in sorted(h.screens.items())},
        "actives_expr": h.actives_expr,
        "inactives_expr": h.inactives_expr,
        "actives": n_act,
        "inactives": len(labels) - n_act,
        "active_percent": round(100.0 * n_act / len(labels), 4) if labels else 0.0,
    }
    (out / "hierarchy_summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(f"actives {n_act}, inactives {len(labels) - n_act} ({summary['active_percent']}% active)")
    if cfg.data.compounds:
        table = {}
        with open(cfg.data.compounds, newline="") as fh:
            for row in csv.DictReader(fh):
                table[int(row["cid"])] = (row["smiles"], row.get("inchi") or None)
        records, missing = [], []
        for c, y in labels.items():
            if c not in table:
                missing.append(c)
                continue
            v = values.get(c, inactive_value if y == 0 else None)
            records.append(CompoundRecord(c, table[c][0], table[c][1], y, v))
        write_dataset_csv(out / "dataset.csv", records)
        print(f"dataset.csv: {len(records)} records, {len(missing)} cids without structures")
    return 0


def cmd_curate(cfg: RunConfig, args, out: Path) -> int:
    dataset = _require(cfg.data.dataset, "--dataset", "data.dataset")
    records = read_dataset_csv(dataset)
    curated, report = run_pipeline(records, cfg.curation)
    write_dataset_csv(out / "curated.csv", curated)
    (out / "curation_report.json").write_text(report.to_json())
    (out / "curation_summary.txt").write_text(report.summary())
    _write_csv(out / "expert_review.csv", ["cid", "step", "reason"],
               [[f.cid, f.step, f.reason] for f in report.flags])
    print(report.summary(), end="")
    return 0


def cmd_split(cfg: RunConfig, args, out: Path) -> int:
    dataset = _require(cfg.data.dataset, "--dataset", "data.dataset")
    records = read_dataset_csv(dataset)
    if cfg.split.scheme == "adapted_cv":
        unlabeled = [r.cid for r in records if r.label is None]
        if unlabeled:
            raise CliError("DatasetError", f"{len(unlabeled)} record(s) without labels cannot be stratified")
        plans = make_cv_folds(records, cfg.split.k, cfg.seed)
    elif cfg.split.scheme == "scaffold":
        pairs, errors = read_molecules(dataset, cfg.jobs)
        if errors:
            raise CliError("ParseError", f"{len(errors)} unparsable SMILES, first: {errors[0]}")
        keys = [(cid, bm_scaffold(m, cfg.split.keep_exocyclic)) for cid, m in pairs]
        plans = [scaffold_split(keys, tuple(cfg.split.ratio), cfg.seed)]
    else:
        raise CliError("ConfigError", f"unknown split scheme {cfg.split.scheme!r}")
    write_split_file(out / "split.csv", plans)
    for p in plans:
        label = "" if p.fold is None else f"fold {p.fold}: "
        print(label + ", ".join(f"{k} {v}" for k, v in p.counts().items()))
    return 0


def cmd_featurize(cfg: RunConfig, args, out: Path) -> int:
    source = cfg.data.sdf or cfg.data.dataset
    source = _require(source, "--sdf or --dataset", "data.sdf / data.dataset")
    pairs, errors = read_molecules(source, cfg.jobs)
    kind = cfg.features.kind
    graphs, ferr = featurize_molecules(pairs, kind, cfg.jobs, cfg.data.properties)
    errors += ferr
    n = write_graph_store(out / f"graphs_{kind}", graphs, kind=kind, hydrogens=hydrogen_mode(pairs))
    (out / "featurize_errors.txt").write_text("".join(e + "\n" for e in errors))
    print(f"{n} {kind} graphs written, {len(errors)} molecule(s) skipped")
    return 0


def cmd_describe(cfg: RunConfig, args, out: Path) -> int:
    sdf = _require(cfg.data.sdf, "--sdf", "data.sdf")
    pairs, errors = read_molecules(sdf, cfg.jobs)
    rows, derr = describe_molecules(pairs, cfg.jobs, cfg.data.properties)
    errors += derr
    n = write_descriptor_csv(out / "descriptors.csv", rows)
    (out / "describe_errors.txt").write_text("".join(e + "\n" for e in errors))
    print(f"{n} descriptors written, {len(errors)} molecule(s) skipped")
    return 0


def cmd_train_baseline(cfg: RunConfig, args, out: Path) -> int:
    dataset = _require(cfg.data.dataset, "--dataset", "data.dataset")
    cids, x = read_descriptor_csv(args.descriptors)
    labels = _labels(dataset)
    plans = read_split_file(args.split)
    scores = train_baseline(cids, x, labels, plans, cfg.baseline, descriptor_layout())
    (out / "scores").mkdir(exist_ok=True)
    for plan, s in zip(plans, scores):
        name = "test" if plan.fold is None else f"fold{plan.fold}"
        write_predictions(out / "scores" / f"{name}.tsv", s)
        print(f"{name}: {len(s)} test scores")
    return 0


def cmd_evaluate(cfg: RunConfig, args, out: Path) -> int:
    dataset = _require(cfg.data.dataset, "--dataset", "data.dataset")
    labels = _labels(dataset)
    plans = read_split_file(args.split)
    preds = list(args.pred)
    if len(preds) == 1 and len(plans) > 1:
        preds = preds * len(plans)
    report = evaluate_predictions(preds, plans, labels, seed=cfg.seed, version=cfg.version_tag,
                                  n_shuffles=cfg.metrics.n_shuffles)
    (out / "metrics.json").write_text(report.to_json())
    (out / "metrics.txt").write_text(report.table())
    print(report.table(), end="")
    return 0


def cmd_report(cfg: RunConfig, args, out: Path) -> int:
    reports = [MetricReport.from_json(Path(p).read_text()) for p in args.metrics]
    names = args.names or [Path(p).parent.name or Path(p).stem for p in args.metrics]
    if len(names) != len(reports):
        raise CliError("UsageError", "--names must match --metrics in number")
    head = f"{'run':<20}" + "".join(f"{m:>18}" for m in METRICS)
    lines = [head, "-" * len(head)]
    for name, r in zip(names, reports):
        cells = []
        for m in METRICS:
            a = r.aggregate[m]
            se = "" if a["se"] is None else f" ± {a['se']:.3f}"
            cells.append(f"{a['mean']:.3f}{se}")
        lines.append(f"{name:<20}" + "".join(f"{c:>18}" for c in cells))
    table = "\n".join(lines) + "\n"
    (out / "report.txt").write_text(table)
    tag = cfg.version_tag or (reports[0].version if reports else "")
    for m in METRICS:
        svg = bar_chart_svg(
            [m], names,
            [[r.aggregate[m]["mean"]] for r in reports],
            [[r.aggregate[m]["se"]] for r in reports],
            title=f"{m} (mean ± SE){' ' + tag if tag else ''}",
        )
        (out / f"{m}.svg").write_text(svg)
    print(table, end="")
    return 0


HANDLERS = {
    "fetch": cmd_fetch,
    "hierarchy": cmd_hierarchy,
    "curate": cmd_curate,
    "split": cmd_split,
    "featurize": cmd_featurize,
    "describe": cmd_describe,
    "train-baseline": cmd_train_baseline,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
}


def _setup_logging(out: Path) -> logging.Handler:
    handler = logging.FileHandler(out / "run.log")
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger()
    root.addHandler(handler)
    root.setLevel(logging.INFO)
    return handler


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = None
    try:
        cfg = resolve_config(args)
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        handler = _setup_logging(out)
        log.info("vsbench %s %s", __version__, " ".join(sys.argv[1:] if argv is None else argv))
        (out / "resolved_config.toml").write_text(dump_toml(to_dict(cfg)))
        return HANDLERS[args.command](cfg, args, out)
    except Exception as exc:  # one machine-parsable line per failure
        category = getattr(exc, "category", type(exc).__name__)
        msg = str(exc).splitlines()[0] if str(exc) else category
        print(f"vsbench: error[{category}]: {msg}", file=sys.stderr)
        log.exception("command failed")
        return 1
    finally:
        if handler is not None:
            logging.getLogger().removeHandler(handler)
            handler.close()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
