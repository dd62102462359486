from .filters import (
    FilterDecision,
    LipinskiResult,
    canonical_key,
    dedupe,
    handle_mixture,
    inorganic_filter,
    lipinski,
    lipinski_values,
    optical_filter,
    pains_catalog_filter,
    parser_filter,
)
from .hierarchy import (
    HierarchyError,
    Screen,
    ScreenHierarchy,
    evaluate_expression,
    evaluate_hierarchy,
    load_hierarchy,
)
from .pipeline import DEFAULT_STEPS, CurationConfig, CurationError, run_pipeline
from .promiscuity import PromiscuityDataError, PromiscuityTable, foh
from .records import CompoundRecord, DatasetError, read_dataset_csv, write_dataset_csv
from .report import CurationReport

__all__ = [
    "CompoundRecord",
    "CurationConfig",
    "CurationError",
    "CurationReport",
    "DEFAULT_STEPS",
    "DatasetError",
    "FilterDecision",
    "HierarchyError",
    "LipinskiResult",
    "PromiscuityDataError",
    "PromiscuityTable",
    "Screen",
    "ScreenHierarchy",
    "canonical_key",
    "dedupe",
    "evaluate_expression",
    "evaluate_hierarchy",
    "foh",
    "handle_mixture",
    "inorganic_filter",
    "lipinski",
    "lipinski_values",
    "load_hierarchy",
    "optical_filter",
    "pains_catalog_filter",
    "parser_filter",
    "read_dataset_csv",
    "run_pipeline",
    "write_dataset_csv",
]
