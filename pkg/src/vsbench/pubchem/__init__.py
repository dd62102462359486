from .client import (
    CACHE_ENV,
    FIXTURE_ENV,
    AssayFetchSpec,
    AssayTable,
    FixtureTransport,
    IdentifierResult,
    NotFoundError,
    PubChemClient,
    PubChemError,
    PubChemFormatError,
    RateLimiter,
    UrllibTransport,
    normalize_outcome,
    parse_assay_csv,
)

__all__ = [
    "AssayFetchSpec",
    "AssayTable",
    "CACHE_ENV",
    "FIXTURE_ENV",
    "FixtureTransport",
    "IdentifierResult",
    "NotFoundError",
    "PubChemClient",
    "PubChemError",
    "PubChemFormatError",
    "RateLimiter",
    "UrllibTransport",
    "normalize_outcome",
    "parse_assay_csv",
]
