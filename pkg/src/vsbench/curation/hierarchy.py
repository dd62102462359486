"""Declarative screen hierarchies: outcome sets combined by set expressions.

Expressions combine ``active(AID)`` and ``inactive(AID)`` terms with
``|`` (union), ``&`` (intersection) and ``-`` (difference).  ``&`` binds
tighter than ``|`` and ``-``, which associate to the left; parentheses
group.  Example: ``active(1488) - active(1741)``.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..config import ConfigError, load_toml

ROLES = ("primary", "confirmatory", "counter", "extra")
OUTCOMES = ("active", "inactive")


class HierarchyError(ValueError):
    pass


@dataclass
class Screen:
    aid: int
    role: str
    outcomes: dict[int, str]  # cid -> active / inactive
    values: dict[int, float] = field(default_factory=dict)  # cid -> µM
    n_tested: int | None = None  # rows in the outcome table, inconclusive included

    def __post_init__(self):
        if self.role not in ROLES:
            raise HierarchyError(f"screen {self.aid}: unknown role {self.role!r}")

    def members(self, outcome: str) -> set[int]:
        return {c for c, o in self.outcomes.items() if o == outcome}


@dataclass
class ScreenHierarchy:
    screens: dict[int, Screen]
    actives_expr: str
    inactives_expr: str

    def validate(self) -> None:
        for expr in (self.actives_expr, self.inactives_expr):
            for aid in referenced_screens(expr):
                if aid not in self.screens:
                    raise HierarchyError(f"expression references undeclared screen {aid}")


_TOKEN = re.compile(r"\s*(?:(active|inactive)\s*\(\s*(\d+)\s*\)|([|&()\-]))")


def _tokenize(expr: str) -> list[tuple]:
    pos, out = 0, []
    expr = expr.rstrip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m:
            raise HierarchyError(f"cannot parse expression at {expr[pos:]!r}")
        if m.group(1):
            out.append(("term", m.group(1), int(m.group(2))))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    if not out:
        raise HierarchyError("empty expression")
    return out


def _parse(tokens: list[tuple]):
    """Recursive descent to a nested tuple tree."""
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def atom():
        nonlocal pos
        t = peek()
        if t is None:
            raise HierarchyError("expression ends early")
        pos += 1
        if t[0] == "term":
            return t
        if t == ("op", "("):
            node = union()
            if peek() != ("op", ")"):
                raise HierarchyError("missing ')'")
            pos += 1
            return node
        raise HierarchyError(f"unexpected {t[1]!r}")

    def inter():
        nonlocal pos
        node = atom()
        while peek() == ("op", "&"):
            pos += 1
            node = ("&", node, atom())
        return node

    def union():
        nonlocal pos
        node = inter()
        while peek() in (("op", "|"), ("op", "-")):
            op = peek()[1]
            pos += 1
            node = (op, node, inter())
        return node

    tree = union()
    if pos != len(tokens):
        raise HierarchyError(f"unexpected {tokens[pos][1]!r}")
    return tree


def referenced_screens(expr: str) -> list[int]:
    return [t[2] for t in _tokenize(expr) if t[0] == "term"]


def evaluate_expression(expr: str, screens: dict[int, Screen]) -> set[int]:
    def ev(node) -> set[int]:
        if node[0] == "term":
            _, outcome, aid = node
            if aid not in screens:
                raise HierarchyError(f"expression references undeclared screen {aid}")
            return screens[aid].members(outcome)
        op, a, b = node
        left, right = ev(a), ev(b)
        if op == "|":
            return left | right
        if op == "&":
            return left & right
        return left - right

    return ev(_parse(_tokenize(expr)))


def evaluate_hierarchy(h: ScreenHierarchy) -> dict[int, int]:
    """cid -> 1 (active) / 0 (inactive); overlapping sets are an error."""
    h.validate()
    actives = evaluate_expression(h.actives_expr, h.screens)
    inactives = evaluate_expression(h.inactives_expr, h.screens)
    both = actives & inactives
    if both:
        listed = ", ".join(str(c) for c in sorted(both)[:50])
        raise HierarchyError(f"{len(both)} cid(s) are both active and inactive: {listed}")
    labels = {c: 1 for c in actives}
    labels.update({c: 0 for c in inactives})
    return dict(sorted(labels.items()))


def activity_values(h: ScreenHierarchy, labels: dict[int, int]) -> dict[int, float]:
    """µM values for actives, preferring confirmatory over primary screens."""
    order = sorted(h.screens.values(), key=lambda s: (s.role != "confirmatory", s.role != "primary", s.aid))
    out = {}
    for cid, y in labels.items():
        if y != 1:
            continue
        for s in order:
            v = s.values.get(cid)
            if v is not None and s.outcomes.get(cid) == "active":
                out[cid] = v
                break
    return out


def read_outcome_csv(path: str | Path) -> tuple[dict[int, str], dict[int, float], int]:
    """``cid,outcome,activity_value``; outcomes other than active/inactive are skipped.

    Returns outcomes, values and the number of distinct cids in the table.
    """
    outcomes, values, seen = {}, {}, set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ())[:2] != ("cid", "outcome"):
            raise HierarchyError(f"{path}: expected header cid,outcome[,activity_value]")
        for row in reader:
            seen.add(row["cid"].strip())
            o = row["outcome"].strip().lower()
            if o not in OUTCOMES:
                continue
            cid = int(row["cid"])
            outcomes[cid] = o
            v = (row.get("activity_value") or "").strip()
            if v:
                values[cid] = float(v)
    return outcomes, values, len(seen)


def load_hierarchy(path: str | Path) -> ScreenHierarchy:
    """Read a TOML hierarchy spec; outcome paths are relative to the spec file.

    ::

        [screens.626]
        role = "primary"
        outcomes = "aid626.csv"

        [expressions]
        actives = "active(1488) - active(1741)"
        inactives = "inactive(626)"
    """
    path = Path(path)
    try:
        data = load_toml(path)
    except ConfigError as exc:
        raise HierarchyError(str(exc)) from None
    unknown = set(data) - {"screens", "expressions"}
    if unknown:
        raise HierarchyError(f"unknown key(s) in hierarchy spec: {', '.join(sorted(unknown))}")
    screens = {}
    for key, spec in data.get("screens", {}).items():
        bad = set(spec) - {"role", "outcomes"}
        if bad:
            raise HierarchyError(f"screen {key}: unknown key(s) {', '.join(sorted(bad))}")
        if "role" not in spec or "outcomes" not in spec:
            raise HierarchyError(f"screen {key}: needs role and outcomes")
        aid = int(key)
        outcome_path = path.parent / spec["outcomes"]
        if not outcome_path.exists():
            raise HierarchyError(f"screen {aid}: outcome file {outcome_path} not found")
        outcomes, values, n_tested = read_outcome_csv(outcome_path)
        screens[aid] = Screen(aid, spec["role"], outcomes, values, n_tested)
    expr = data.get("expressions", {})
    if set(expr) != {"actives", "inactives"}:
        raise HierarchyError("[expressions] needs exactly 'actives' and 'inactives'")
    h = ScreenHierarchy(screens, expr["actives"], expr["inactives"])
    h.validate()
    return h
