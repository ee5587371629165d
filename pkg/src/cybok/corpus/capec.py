"""CAPEC attack-pattern catalog parser.

Accepts the MITRE CAPEC XML catalog (the capec-3 schema and close
relatives; matching is namespace-agnostic so minor schema revisions parse
on a best-effort basis).  Attack patterns marked deprecated are dropped at
parse time so retired text never contaminates associations.
"""

from __future__ import annotations

import logging

from cybok.corpus.entries import AttackVectorEntry
from cybok.corpus.xmlutil import (
    find_children,
    flatten_text,
    iter_all,
    local_name,
    parse_xml,
)

logger = logging.getLogger(__name__)

_EXCLUDED_STATUS = {"deprecated", "obsolete"}

# Element names whose prose belongs in the indexable description, in the
# order they usually appear in the catalog.
_PROSE_BLOCKS = {"Summary", "Description", "Extended_Description"}


def catalog_version(root) -> str:
    """Version/date string recorded for snapshot provenance."""
    version = root.get("Version", "unknown")
    date = root.get("Date", "")
    return f"{version} ({date})" if date else version


def _description(pattern) -> str:
    blocks = []
    for child in pattern:
        if local_name(child.tag) in _PROSE_BLOCKS:
            text = flatten_text(child)
            if text:
                blocks.append(text)
    return " ".join(blocks)


def parse_capec(raw: bytes) -> list[AttackVectorEntry]:
    """Parse a CAPEC catalog into attack-vector entries."""
    root = parse_xml(raw)
    if local_name(root.tag) != "Attack_Pattern_Catalog":
        logger.warning(
            "unexpected CAPEC root element %r; attempting best-effort parse",
            root.tag,
        )
    entries = []
    for pattern in iter_all(root, "Attack_Pattern"):
        status = (pattern.get("Status") or "").lower()
        if status in _EXCLUDED_STATUS:
            continue
        pattern_id = pattern.get("ID")
        if not pattern_id:
            logger.warning("skipping Attack_Pattern without ID attribute")
            continue
        weaknesses = set()
        for block in find_children(pattern, "Related_Weaknesses"):
            for ref in find_children(block, "Related_Weakness"):
                cwe_id = ref.get("CWE_ID")
                if cwe_id:
                    weaknesses.add(f"CWE-{cwe_id}")
        entries.append(
            AttackVectorEntry(
                database="CAPEC",
                identifier=f"CAPEC-{pattern_id}",
                name=pattern.get("Name", ""),
                description=_description(pattern),
                related_weaknesses=frozenset(weaknesses),
            )
        )
    return entries
