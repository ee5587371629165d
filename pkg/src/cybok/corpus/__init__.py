"""Corpus acquisition, parsing, and the persistent snapshot store."""

from __future__ import annotations

from cybok.corpus.capec import parse_capec
from cybok.corpus.cve import parse_cve
from cybok.corpus.cwe import parse_cwe
from cybok.corpus.entries import DATABASES, AttackVectorEntry
from cybok.corpus.fetch import (
    CorpusConfig,
    FetchReport,
    fetch_sources,
    maybe_decompress,
)
from cybok.corpus.fixture import parse_fixture
from cybok.corpus.store import (
    CorpusSnapshot,
    build_snapshot,
    load_snapshot,
    save_snapshot,
)
from cybok.corpus.xmlutil import parse_xml
from cybok.errors import ParseError


def parse_source(raw: bytes) -> tuple[list[AttackVectorEntry], str, str]:
    """Parse raw source bytes, sniffing the format.

    Returns ``(entries, database, version)``.  Accepts the CAPEC catalog,
    the CWE catalog, the NVD JSON 1.1 feed, and the flat fixture format;
    gzip/zip containers are unwrapped first.
    """
    from cybok.corpus import capec as capec_mod
    from cybok.corpus import cve as cve_mod
    from cybok.corpus import cwe as cwe_mod
    from cybok.corpus.xmlutil import local_name

    raw = maybe_decompress(raw)
    head = raw.lstrip()[:1]
    if head == b"{":
        feed = cve_mod.load_feed(raw)
        return parse_cve(raw), "CVE", cve_mod.feed_version(feed)
    root = parse_xml(raw)
    name = local_name(root.tag)
    if name == "Attack_Pattern_Catalog":
        return parse_capec(raw), "CAPEC", capec_mod.catalog_version(root)
    if name == "Weakness_Catalog":
        return parse_cwe(raw), "CWE", cwe_mod.catalog_version(root)
    entries = parse_fixture(raw)
    if not entries:
        raise ParseError(f"unrecognized corpus document with root <{name}>")
    databases = {e.database for e in entries}
    database = databases.pop() if len(databases) == 1 else "MIXED"
    return entries, database, "fixture"


__all__ = [
    "AttackVectorEntry",
    "CorpusConfig",
    "CorpusSnapshot",
    "DATABASES",
    "FetchReport",
    "build_snapshot",
    "fetch_sources",
    "load_snapshot",
    "maybe_decompress",
    "parse_capec",
    "parse_cve",
    "parse_cwe",
    "parse_fixture",
    "parse_source",
    "save_snapshot",
]
