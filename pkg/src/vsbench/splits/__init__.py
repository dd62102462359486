"""Adapted cross-validation folds and Bemis-Murcko scaffold splits."""

from .cv import assign_folds, make_cv_folds
from .plan import SPLIT_NAMES, SplitError, SplitPlan, read_split_file, write_split_file
from .scaffold import ACYCLIC, bm_scaffold, murcko_framework, scaffold_split

__all__ = [
    "ACYCLIC", "SPLIT_NAMES", "SplitError", "SplitPlan", "assign_folds", "bm_scaffold",
    "make_cv_folds", "murcko_framework", "read_split_file", "scaffold_split", "write_split_file",
]
