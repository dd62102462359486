"""Named SMARTS catalogs ("pattern<TAB>name" per line, '#' comments)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .matcher import MatchContext, has_match, match_context
from .parser import Pattern, SmartsConfig, SmartsError, UnsupportedFeature, compile_pattern

log = logging.getLogger(__name__)


@dataclass
class CatalogEntry:
    name: str
    smarts: str
    pattern: Pattern


@dataclass
class Catalog:
    entries: list[CatalogEntry] = field(default_factory=list)
    skipped: list[tuple[str, str, str]] = field(default_factory=list)  # (name, smarts, reason)

    @property
    def coverage(self) -> float:
        total = len(self.entries) + len(self.skipped)
        return len(self.entries) / total if total else 1.0

    def coverage_report(self) -> str:
        total = len(self.entries) + len(self.skipped)
        lines = [f"compiled {len(self.entries)}/{total} patterns ({100 * self.coverage:.1f}%)"]
        for name, smarts, reason in self.skipped:
            lines.append(f"  skipped {name}: {reason}")
        return "\n".join(lines)

    def first_match(self, mol) -> str | None:
        """Name of the first entry matching ``mol``, or None."""
        ctx = mol if isinstance(mol, MatchContext) else match_context(mol)
        for e in self.entries:
            if has_match(ctx, e.pattern):
                return e.name
        return None

    def __len__(self) -> int:
        return len(self.entries)


def parse_catalog(text: str, config: SmartsConfig | None = None) -> Catalog:
    cat = Catalog()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        smarts, _, name = line.partition("\t")
        name = name.strip() or f"line{lineno}"
        try:
            cat.entries.append(CatalogEntry(name, smarts, compile_pattern(smarts, config)))
        except UnsupportedFeature as exc:
            cat.skipped.append((name, smarts, f"unsupported {exc.token!r}"))
        except SmartsError as exc:
            cat.skipped.append((name, smarts, f"syntax error: {exc.reason} at {exc.position}"))
    if cat.skipped:
        log.warning("catalog: %d of %d patterns skipped", len(cat.skipped), len(cat.skipped) + len(cat.entries))
    return cat


def load_catalog(path: str | Path | None = None, config: SmartsConfig | None = None) -> Catalog:
    """Load a catalog file; ``None`` loads the bundled PAINS catalog."""
    if path is None:
        text = resources.files("vsbench.data").joinpath("pains.txt").read_text()
    else:
        text = Path(path).read_text()
    return parse_catalog(text, config)
