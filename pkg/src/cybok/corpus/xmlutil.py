"""Small XML helpers shared by the catalog parsers."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from cybok.errors import ParseError


def parse_xml(raw: bytes) -> ET.Element:
    """Parse bytes into an element tree root, with located errors."""
    try:
        return ET.fromstring(raw)
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (None, None))
        offset = None
        if line is not None:
            lines = raw.split(b"\n")
            offset = sum(len(l) + 1 for l in lines[: line - 1]) + (column or 0)
        raise ParseError(
            f"malformed XML: {exc}", line=line, column=column, offset=offset
        ) from exc


def local_name(tag: str) -> str:
    """Tag name with any ``{namespace}`` prefix stripped."""
    return tag.rsplit("}", 1)[-1]


def find_children(element: ET.Element, name: str):
    """Direct children matching a local name, namespace-agnostic."""
    return [child for child in element if local_name(child.tag) == name]


def iter_all(element: ET.Element, name: str):
    """All descendants matching a local name, in document order."""
    return [node for node in element.iter() if local_name(node.tag) == name]


def flatten_text(element: ET.Element) -> str:
    """All text content of an element, whitespace-normalized."""
    return " ".join("".join(element.itertext()).split())
