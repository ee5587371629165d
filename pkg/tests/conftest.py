"""Shared fixtures: the bundled corpus pipeline, built once per session."""

import pytest

from cybok import data
from cybok.corpus import parse_source
from cybok.corpus.store import build_snapshot
from cybok.index import build_index
from cybok.model import load_graphml


@pytest.fixture(scope="session")
def snapshot():
    entries = []
    versions = {}
    for name in data.SOURCE_FILES:
        parsed, database, version = parse_source(data.read_bytes(name))
        entries.extend(parsed)
        versions[database] = version
    return build_snapshot(entries, versions)


@pytest.fixture(scope="session")
def index(snapshot):
    return build_index(snapshot)


@pytest.fixture()
def model():
    # Parsed fresh per test: descriptors get mutated by what-if tests.
    return load_graphml(data.read_bytes(data.MODEL_FILE))
