"""Uniform attack-vector entry shared by all three source databases.

CAPEC, CWE and CVE records are reduced to the same shape: an identifier,
title text, prose description, and the cross-database references that later
drive upward abstraction (CVE -> CWE -> CAPEC).  Parsers are responsible for
constructing entries; construction validates the identifier and reference
invariants so nothing malformed can enter a snapshot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from cybok.errors import CorpusError

DATABASES = ("CAPEC", "CWE", "CVE")

_ID_PATTERNS = {
    "CAPEC": re.compile(r"^CAPEC-\d+$"),
    "CWE": re.compile(r"^CWE-\d+$"),
    "CVE": re.compile(r"^CVE-\d{4}-\d{4,}$"),
}


def _check_identifier(database: str, identifier: str) -> None:
    pattern = _ID_PATTERNS.get(database)
    if pattern is None:
        raise CorpusError(f"unknown database {database!r}")
    if not pattern.match(identifier):
        raise CorpusError(
            f"identifier {identifier!r} is not a well-formed {database} id"
        )


@dataclass(frozen=True)
class AttackVectorEntry:
    database: str
    identifier: str
    name: str
    description: str
    related_attack_patterns: frozenset[str] = field(default_factory=frozenset)
    related_weaknesses: frozenset[str] = field(default_factory=frozenset)
    related_vulnerabilities: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        _check_identifier(self.database, self.identifier)
        for db, refs in (
            ("CAPEC", self.related_attack_patterns),
            ("CWE", self.related_weaknesses),
            ("CVE", self.related_vulnerabilities),
        ):
            for ref in refs:
                _check_identifier(db, ref)
                if ref == self.identifier:
                    raise CorpusError(
                        f"{self.identifier} lists itself as a related entry"
                    )

    @property
    def text(self) -> str:
        """The prose that gets indexed: title plus description."""
        return f"{self.name} {self.description}".strip()

    def to_dict(self) -> dict:
        return {
            "database": self.database,
            "identifier": self.identifier,
            "name": self.name,
            "description": self.description,
            "related_attack_patterns": sorted(self.related_attack_patterns),
            "related_weaknesses": sorted(self.related_weaknesses),
            "related_vulnerabilities": sorted(self.related_vulnerabilities),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AttackVectorEntry":
        return cls(
            database=raw["database"],
            identifier=raw["identifier"],
            name=raw.get("name", ""),
            description=raw.get("description", ""),
            related_attack_patterns=frozenset(raw.get("related_attack_patterns", ())),
            related_weaknesses=frozenset(raw.get("related_weaknesses", ())),
            related_vulnerabilities=frozenset(raw.get("related_vulnerabilities", ())),
        )
