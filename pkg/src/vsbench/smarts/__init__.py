"""SMARTS subset: compilation, substructure matching and pattern catalogs."""

from .catalog import Catalog, load_catalog, parse_catalog
from .matcher import MatchContext, find_matches, has_match, match_context
from .parser import Pattern, SmartsConfig, SmartsError, UnsupportedFeature, compile_pattern

__all__ = [
    "Catalog", "load_catalog", "parse_catalog", "MatchContext", "find_matches", "has_match",
    "match_context", "Pattern", "SmartsConfig", "SmartsError", "UnsupportedFeature", "compile_pattern",
]
