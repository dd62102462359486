"""Virtual-screening benchmark toolkit: curation, features, splits and metrics."""

__version__ = "0.1.0"
