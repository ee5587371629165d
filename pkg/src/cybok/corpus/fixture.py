"""Flat fixture corpus format.

A minimal XML shape used throughout the test suite for synthetic corpora:

    <corpus>
      <entry db="CAPEC" id="CAPEC-1">
        <name>...</name>
        <description>...</description>
        <rel id="CWE-20"/>
      </entry>
    </corpus>

``rel`` references are sorted into the matching related-* set by their
prefix.  The format is intentionally tiny: one element per entry, no
namespaces, trivially writable by hand or by a generator.
"""

from __future__ import annotations

from cybok.corpus.entries import AttackVectorEntry
from cybok.errors import CorpusError
from cybok.corpus.xmlutil import find_children, flatten_text, iter_all, parse_xml

_REL_BUCKETS = (
    ("CAPEC-", "related_attack_patterns"),
    ("CWE-", "related_weaknesses"),
    ("CVE-", "related_vulnerabilities"),
)


def parse_fixture(raw: bytes) -> list[AttackVectorEntry]:
    root = parse_xml(raw)
    entries = []
    for node in iter_all(root, "entry"):
        database = node.get("db") or ""
        identifier = node.get("id") or ""
        buckets: dict[str, set[str]] = {name: set() for _, name in _REL_BUCKETS}
        for rel in find_children(node, "rel"):
            ref = (rel.get("id") or "").strip()
            for prefix, bucket in _REL_BUCKETS:
                if ref.startswith(prefix):
                    buckets[bucket].add(ref)
                    break
            else:
                raise CorpusError(f"{identifier}: unrecognized rel id {ref!r}")
        names = find_children(node, "name")
        descriptions = find_children(node, "description")
        entries.append(
            AttackVectorEntry(
                database=database,
                identifier=identifier,
                name=flatten_text(names[0]) if names else "",
                description=flatten_text(descriptions[0]) if descriptions else "",
                related_attack_patterns=frozenset(buckets["related_attack_patterns"]),
                related_weaknesses=frozenset(buckets["related_weaknesses"]),
                related_vulnerabilities=frozenset(buckets["related_vulnerabilities"]),
            )
        )
    return entries


def dump_fixture(entries) -> bytes:
    """Serialize entries back to the flat format (test helper)."""
    import xml.etree.ElementTree as ET

    root = ET.Element("corpus")
    for entry in entries:
        node = ET.SubElement(root, "entry", db=entry.database, id=entry.identifier)
        ET.SubElement(node, "name").text = entry.name
        ET.SubElement(node, "description").text = entry.description
        refs = sorted(
            entry.related_attack_patterns
            | entry.related_weaknesses
            | entry.related_vulnerabilities
        )
        for ref in refs:
            ET.SubElement(node, "rel", id=ref)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)
