"""Bundled reference corpus: curated faulty/fixed method pairs with labels.

The corpus ships with the package so the classifier can be exercised
end-to-end without any external data: a manifest of faulty/fixed source
pairs, the reference label file for those pairs, and a per-project
aggregate table for the statistics layer.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def golden_dir() -> Path:
    """Return the directory holding the bundled corpus files."""
    return Path(resources.files(__package__))


def manifest_path() -> Path:
    return golden_dir() / "manifest.json"


def expected_path() -> Path:
    return golden_dir() / "expected.csv"


def aggregates_path() -> Path:
    return golden_dir() / "table1.csv"
