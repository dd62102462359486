"""Periodic-table lookups used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources


@dataclass(frozen=True, slots=True)
class Element:
    number: int
    symbol: str
    weight: float
    outer_electrons: int
    rb0: float
    rcov: float
    valences: tuple[int, ...]


def _load() -> list[Element]:
    text = resources.files("vsbench.data").joinpath("elements.tsv").read_text()
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        z, sym, w, outer, rb0, rcov, vals = line.split("\t")
        valences = tuple(int(v) for v in vals.split(",") if int(v) >= 0)
        out.append(Element(int(z), sym, float(w), int(outer), float(rb0), float(rcov), valences))
    return out


ELEMENTS: list[Element] = _load()
BY_NUMBER: dict[int, Element] = {e.number: e for e in ELEMENTS}
BY_SYMBOL: dict[str, Element] = {e.symbol: e for e in ELEMENTS}

# atoms that may be written without brackets in SMILES
ORGANIC_SUBSET = {"B": 5, "C": 6, "N": 7, "O": 8, "P": 15, "S": 16, "F": 9, "Cl": 17, "Br": 35, "I": 53}
AROMATIC_ORGANIC = {"b": 5, "c": 6, "n": 7, "o": 8, "p": 15, "s": 16}
AROMATIC_BRACKET = {"b": 5, "c": 6, "n": 7, "o": 8, "p": 15, "s": 16, "se": 34, "as": 33, "te": 52}

# default valences for implicit-hydrogen assignment (OpenSMILES organic subset)
DEFAULT_VALENCES: dict[int, tuple[int, ...]] = {
    5: (3,), 6: (4,), 7: (3, 5), 8: (2,), 15: (3, 5), 16: (2, 4, 6),
    9: (1,), 17: (1,), 35: (1,), 53: (1,),
}

# main-group elements whose valence is checked; charged atoms use the isoelectronic neighbour
_CHECKED_VALENCES: dict[int, tuple[int, ...]] = {
    1: (1,), 3: (1,), 4: (2,), 5: (3,), 6: (4,), 7: (3,), 8: (2,), 9: (1,), 10: (0,),
    11: (1,), 12: (2,), 13: (3,), 14: (4,), 15: (3, 5, 7), 16: (2, 4, 6), 17: (1, 3, 5, 7), 18: (0,),
    33: (3, 5, 7), 34: (2, 4, 6), 35: (1, 3, 5, 7), 53: (1, 3, 5, 7),
}


def symbol(number: int) -> str:
    return BY_NUMBER[number].symbol


def atomic_number(sym: str) -> int:
    try:
        return BY_SYMBOL[sym].number
    except KeyError:
        raise KeyError(f"unknown element symbol {sym!r}") from None


def atomic_weight(number: int) -> float:
    return BY_NUMBER[number].weight


def allowed_valences(number: int, charge: int) -> tuple[int, ...] | None:
    """Permitted total valences for a main-group atom, or None when unchecked.

    Charged atoms borrow the valence list of the isoelectronic element in the
    same block (N+ behaves like C, O- like F, C- like N).
    """
    if number not in _CHECKED_VALENCES:
        return None
    if charge == 0:
        return _CHECKED_VALENCES[number]
    shifted = number - charge
    if number <= 10 and 1 <= shifted <= 10:
        return _CHECKED_VALENCES.get(shifted)
    if 11 <= number <= 18 and 11 <= shifted <= 18:
        return _CHECKED_VALENCES.get(shifted)
    if number in (33, 34, 35) and 31 <= shifted <= 36:
        return _CHECKED_VALENCES.get(shifted, None)
    if number == 53 and 51 <= shifted <= 54:
        return None
    return None
