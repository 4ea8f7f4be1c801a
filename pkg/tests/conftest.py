"""Shared fixtures: the bundled corpus, loaded once per session."""

from __future__ import annotations

import sys

import pytest

from ffc.dataset import load_graph, load_manifest, read_labels
from ffc.golden import aggregates_path, expected_path, manifest_path


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one line per acceptance criterion after the run."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def golden_entries():
    return load_manifest(manifest_path())


@pytest.fixture(scope="session")
def golden_expected():
    return {row.key: row.classes for row in read_labels(expected_path())}


@pytest.fixture(scope="session")
def golden_graphs(golden_entries):
    """id -> (faulty graph, fixed graph), DFG populated."""
    return {e.id: (load_graph(e.faulty, e.method), load_graph(e.fixed, e.method))
            for e in golden_entries}


@pytest.fixture(scope="session")
def golden_aggregates_file():
    return aggregates_path()


@pytest.fixture(scope="session")
def golden_manifest_file():
    return manifest_path()


@pytest.fixture(scope="session")
def golden_expected_file():
    return expected_path()
