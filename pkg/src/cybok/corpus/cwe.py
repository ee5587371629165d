"""CWE weakness catalog parser.

Accepts the MITRE CWE XML catalog (cwe-6/cwe-7 schema family; matching is
namespace-agnostic).  Deprecated weaknesses are excluded; CAPEC references
become ``related_attack_patterns``.
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

_PROSE_BLOCKS = {"Description", "Extended_Description"}


def catalog_version(root) -> str:
    version = root.get("Version", "unknown")
    date = root.get("Date", "")
    return f"{version} ({date})" if date else version


def _description(weakness) -> str:
    blocks = []
    for child in weakness:
        if local_name(child.tag) in _PROSE_BLOCKS:
            text = flatten_text(child)
            if text:
                blocks.append(text)
    return " ".join(blocks)


def parse_cwe(raw: bytes) -> list[AttackVectorEntry]:
    """Parse a CWE catalog into attack-vector entries."""
    root = parse_xml(raw)
    if local_name(root.tag) != "Weakness_Catalog":
        logger.warning(
            "unexpected CWE root element %r; attempting best-effort parse",
            root.tag,
        )
    entries = []
    for weakness in iter_all(root, "Weakness"):
        status = (weakness.get("Status") or "").lower()
        if status in _EXCLUDED_STATUS:
            continue
        weakness_id = weakness.get("ID")
        if not weakness_id:
            logger.warning("skipping Weakness without ID attribute")
            continue
        patterns = set()
        for block in find_children(weakness, "Related_Attack_Patterns"):
            for ref in find_children(block, "Related_Attack_Pattern"):
                capec_id = ref.get("CAPEC_ID")
                if capec_id:
                    patterns.add(f"CAPEC-{capec_id}")
        entries.append(
            AttackVectorEntry(
                database="CWE",
                identifier=f"CWE-{weakness_id}",
                name=weakness.get("Name", ""),
                description=_description(weakness),
                related_attack_patterns=frozenset(patterns),
            )
        )
    return entries
