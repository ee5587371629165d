"""CVE feed parser.

The upstream adapter accepts the NVD JSON 1.1 data feed (the
``nvdcve-1.1-*.json`` files).  NVD has changed formats repeatedly over the
years; isolating the schema behind this one function keeps the rest of the
pipeline indifferent to feed churn.  Entries whose description marks them
rejected or reserved are excluded, and ``NVD-CWE-*`` placeholder mappings
are ignored.
"""

from __future__ import annotations

import json
import logging
import re

from cybok.corpus.entries import AttackVectorEntry
from cybok.errors import ParseError

logger = logging.getLogger(__name__)

_CWE_REF = re.compile(r"^CWE-\d+$")
_EXCLUDED_MARKERS = ("** REJECT **", "** RESERVED **")


def feed_version(feed: dict) -> str:
    """Version/date string recorded for snapshot provenance."""
    return str(feed.get("CVE_data_timestamp") or feed.get("CVE_data_version") or "unknown")


def load_feed(raw: bytes) -> dict:
    try:
        feed = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"CVE feed is not UTF-8: {exc}", offset=exc.start) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"malformed CVE feed JSON: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
            offset=exc.pos,
        ) from exc
    if not isinstance(feed, dict) or "CVE_Items" not in feed:
        raise ParseError("CVE feed has no CVE_Items array; expected NVD JSON 1.1")
    return feed


def _english_description(cve: dict) -> str:
    data = (cve.get("description") or {}).get("description_data") or []
    for block in data:
        if block.get("lang") == "en":
            return " ".join(str(block.get("value", "")).split())
    if data:
        return " ".join(str(data[0].get("value", "")).split())
    return ""


def _weakness_refs(cve: dict) -> frozenset[str]:
    refs = set()
    for group in (cve.get("problemtype") or {}).get("problemtype_data") or []:
        for item in group.get("description") or []:
            value = str(item.get("value", "")).strip()
            if _CWE_REF.match(value):
                refs.add(value)
            elif value and not value.startswith("NVD-CWE"):
                logger.debug("ignoring non-CWE problem type %r", value)
    return frozenset(refs)


def parse_cve(raw: bytes) -> list[AttackVectorEntry]:
    """Parse an NVD JSON 1.1 feed into attack-vector entries."""
    feed = load_feed(raw)
    entries = []
    for item in feed.get("CVE_Items") or []:
        cve = item.get("cve") or {}
        meta = cve.get("CVE_data_meta") or {}
        identifier = meta.get("ID")
        if not identifier:
            logger.warning("skipping CVE item without CVE_data_meta.ID")
            continue
        description = _english_description(cve)
        if any(marker in description for marker in _EXCLUDED_MARKERS):
            continue
        entries.append(
            AttackVectorEntry(
                database="CVE",
                identifier=identifier,
                name="",
                description=description,
                related_weaknesses=_weakness_refs(cve),
            )
        )
    return entries
