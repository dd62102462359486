"""Molecular graph model, SMILES/SDF I/O and structure perception."""

from .molecule import Atom, Bond, BondType, Molecule, MoleculeError
from .smiles import SmilesError, parse_smiles, write_smiles
from .perception import aromatize
from .kekule import kekulize

__all__ = [
    "Atom", "Bond", "BondType", "Molecule", "MoleculeError", "SmilesError",
    "parse_smiles", "write_smiles", "aromatize", "kekulize",
]
