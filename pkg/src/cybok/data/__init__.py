"""Bundled sample corpus sources and a reference system model.

The files in this directory are small, self-contained stand-ins for the
real CAPEC/CWE catalogs and an NVD feed, plus a GraphML model of a small
unmanned aircraft system.  They let the toolchain run end to end without
network access and give the test suite a corpus whose matching behaviour
is fully known.
"""

from importlib import resources
from pathlib import Path

SOURCE_FILES = ("capec.xml", "cwe.xml", "cve.json")
MODEL_FILE = "uas.graphml"


def read_bytes(name: str) -> bytes:
    """Return the raw contents of a bundled data file."""
    return (resources.files(__package__) / name).read_bytes()


def directory() -> Path:
    """Return the on-disk directory containing the bundled data files.

    The package is installed as a plain directory (not zipped), so the
    resources are real files and can be handed to code that wants paths.
    """
    return Path(str(resources.files(__package__)))
