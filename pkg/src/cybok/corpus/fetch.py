"""Source acquisition for the three corpora.

``fetch_sources`` either downloads from the configured URLs or, for
local-path sources, copies the file verbatim — the offline mode every test
uses.  Fetching never parses; it only stores raw bytes plus integrity
metadata, so a snapshot build can always be traced back to exact inputs.
"""

from __future__ import annotations

import gzip
import hashlib
import io
import logging
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import urlparse

import requests

from cybok.corpus.entries import DATABASES
from cybok.errors import FetchError

logger = logging.getLogger(__name__)

DEFAULT_URLS = {
    "CAPEC": "https://capec.mitre.org/data/xml/capec_latest.xml",
    "CWE": "https://cwe.mitre.org/data/xml/cwec_latest.xml.zip",
    "CVE": "https://nvd.nist.gov/feeds/json/cve/1.1/nvdcve-1.1-modified.json.gz",
}

_DEFAULT_SUFFIX = {"CAPEC": ".xml", "CWE": ".xml", "CVE": ".json"}

_TIMEOUT = 60


@dataclass
class CorpusConfig:
    """Which databases to fetch and where from (URL or local path)."""

    sources: dict[str, str]

    def __post_init__(self):
        for database in self.sources:
            if database not in DATABASES:
                raise FetchError(
                    "unknown database in config", database=database, retryable=False
                )

    @classmethod
    def default(cls, databases=DATABASES) -> "CorpusConfig":
        return cls({db: DEFAULT_URLS[db] for db in databases})

    @classmethod
    def offline(cls, source_dir: Path, databases=DATABASES) -> "CorpusConfig":
        """Point every enabled database at a file in ``source_dir``.

        Files are matched by database name: capec.*, cwe.*, cve.*.
        """
        source_dir = Path(source_dir)
        sources = {}
        for database in databases:
            matches = sorted(source_dir.glob(database.lower() + ".*"))
            if not matches:
                raise FetchError(
                    f"no {database.lower()}.* file in {source_dir}",
                    database=database,
                    retryable=False,
                )
            sources[database] = str(matches[0])
        return cls(sources)


@dataclass
class FetchedSource:
    database: str
    origin: str
    stored_path: Path
    sha256: str
    size: int


@dataclass
class FetchReport:
    sources: list[FetchedSource] = field(default_factory=list)


def _is_url(spec: str) -> bool:
    return urlparse(spec).scheme in ("http", "https")


def _suffix_for(database: str, origin: str) -> str:
    name = Path(urlparse(origin).path if _is_url(origin) else origin).name
    for suffix in (".xml.zip", ".json.gz", ".xml.gz", ".zip", ".gz", ".xml", ".json"):
        if name.endswith(suffix):
            return suffix
    return _DEFAULT_SUFFIX[database]


def _acquire(database: str, origin: str) -> bytes:
    if _is_url(origin):
        try:
            response = requests.get(origin, timeout=_TIMEOUT)
            response.raise_for_status()
        except requests.RequestException as exc:
            raise FetchError(
                f"download failed from {origin}: {exc}",
                database=database,
                retryable=True,
            ) from exc
        return response.content
    try:
        return Path(origin).read_bytes()
    except OSError as exc:
        raise FetchError(
            f"cannot read local source {origin}: {exc}",
            database=database,
            retryable=False,
        ) from exc


def fetch_sources(config: CorpusConfig, destination: Path) -> FetchReport:
    """Acquire every configured source into ``destination``."""
    destination = Path(destination)
    destination.mkdir(parents=True, exist_ok=True)
    report = FetchReport()
    for database in DATABASES:
        origin = config.sources.get(database)
        if origin is None:
            continue
        raw = _acquire(database, origin)
        if not raw:
            raise FetchError(
                f"source from {origin} is empty",
                database=database,
                retryable=False,
            )
        stored = destination / (database.lower() + _suffix_for(database, origin))
        stored.write_bytes(raw)
        report.sources.append(
            FetchedSource(
                database=database,
                origin=origin,
                stored_path=stored,
                sha256=hashlib.sha256(raw).hexdigest(),
                size=len(raw),
            )
        )
        logger.info("fetched %s from %s (%d bytes)", database, origin, len(raw))
    return report


def maybe_decompress(raw: bytes) -> bytes:
    """Transparently unwrap gzip/zip containers the upstream feeds use."""
    if raw[:2] == b"\x1f\x8b":
        return gzip.decompress(raw)
    if raw[:4] == b"PK\x03\x04":
        with zipfile.ZipFile(io.BytesIO(raw)) as archive:
            names = archive.namelist()
            if not names:
                raise FetchError(
                    "zip archive contains no files", database="?", retryable=False
                )
            return archive.read(names[0])
    return raw
