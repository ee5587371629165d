"""Snapshot store: a persistent, diffable record of parsed attack vectors.

On disk a snapshot is a directory:

    manifest.json   format version, source versions, per-database counts,
                    ingested_at, content-derived snapshot id
    capec.json      entries for one database, sorted by identifier
    cwe.json
    cve.json

Everything is UTF-8 JSON with sorted keys and a trailing newline, so two
snapshots built from identical sources are byte-identical.  For the same
reason ``ingested_at`` defaults to the newest date found in the source
version strings — the snapshot is stamped with the vintage of its data,
not with wall-clock time.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from cybok.corpus.entries import DATABASES, AttackVectorEntry
from cybok.errors import CorpusError, PersistenceError

logger = logging.getLogger(__name__)

STORE_FORMAT = "cybok-snapshot"
STORE_FORMAT_VERSION = 1

_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}")
_EPOCH = "1970-01-01T00:00:00Z"


@dataclass
class CorpusSnapshot:
    entries: dict[str, AttackVectorEntry]
    source_versions: dict[str, str] = field(default_factory=dict)
    ingested_at: str = _EPOCH
    snapshot_id: str = ""

    def __post_init__(self):
        for identifier, entry in self.entries.items():
            if identifier != entry.identifier:
                raise CorpusError(
                    f"snapshot key {identifier!r} does not match entry id "
                    f"{entry.identifier!r}"
                )
        if not self.entries:
            raise CorpusError("snapshot requires at least one entry")
        if not self.snapshot_id:
            self.snapshot_id = _content_id(self.entries, self.source_versions)

    def lookup(self, identifier: str) -> AttackVectorEntry | None:
        return self.entries.get(identifier)

    def by_database(self, database: str) -> list[AttackVectorEntry]:
        return sorted(
            (e for e in self.entries.values() if e.database == database),
            key=lambda e: e.identifier,
        )


def _canonical_json(value) -> str:
    return json.dumps(value, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _content_id(entries: dict[str, AttackVectorEntry], versions: dict) -> str:
    payload = _canonical_json(
        {
            "entries": [entries[k].to_dict() for k in sorted(entries)],
            "source_versions": versions,
        }
    )
    return "sha256:" + hashlib.sha256(payload.encode("utf-8")).hexdigest()


def derive_ingested_at(source_versions: dict[str, str]) -> str:
    """Newest ISO date mentioned by any source version string."""
    dates = []
    for version in source_versions.values():
        dates.extend(_DATE_RE.findall(version))
    if not dates:
        return _EPOCH
    return max(dates) + "T00:00:00Z"


def build_snapshot(
    entries: list[AttackVectorEntry],
    versions: dict[str, str],
    out_dir: Path | None = None,
    ingested_at: str | None = None,
) -> CorpusSnapshot:
    """Assemble (and optionally persist) a snapshot from parsed entries.

    Duplicate identifiers resolve last-write-wins with a warning.
    """
    if not entries:
        raise CorpusError("snapshot requires at least one entry")
    merged: dict[str, AttackVectorEntry] = {}
    for entry in entries:
        if entry.identifier in merged:
            logger.warning(
                "duplicate entry %s: keeping the later parse", entry.identifier
            )
        merged[entry.identifier] = entry
    snapshot = CorpusSnapshot(
        entries=merged,
        source_versions=dict(versions),
        ingested_at=ingested_at or derive_ingested_at(versions),
    )
    if out_dir is not None:
        save_snapshot(snapshot, out_dir)
    return snapshot


def save_snapshot(snapshot: CorpusSnapshot, out_dir: Path) -> None:
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        counts = {}
        for database in DATABASES:
            rows = [e.to_dict() for e in snapshot.by_database(database)]
            if not rows:
                continue
            counts[database] = len(rows)
            payload = _canonical_json({"database": database, "entries": rows})
            (out_dir / f"{database.lower()}.json").write_text(payload, encoding="utf-8")
        manifest = {
            "format": STORE_FORMAT,
            "format_version": STORE_FORMAT_VERSION,
            "snapshot_id": snapshot.snapshot_id,
            "source_versions": snapshot.source_versions,
            "counts": counts,
            "ingested_at": snapshot.ingested_at,
        }
        (out_dir / "manifest.json").write_text(
            _canonical_json(manifest), encoding="utf-8"
        )
    except OSError as exc:
        raise PersistenceError(f"cannot write snapshot to {out_dir}: {exc}") from exc


def load_snapshot(store_dir: Path) -> CorpusSnapshot:
    store_dir = Path(store_dir)
    manifest_path = store_dir / "manifest.json"
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise PersistenceError(f"cannot read snapshot manifest: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PersistenceError(f"corrupt snapshot manifest: {exc}") from exc
    if manifest.get("format") != STORE_FORMAT:
        raise PersistenceError(f"{manifest_path} is not a snapshot manifest")
    if manifest.get("format_version") != STORE_FORMAT_VERSION:
        raise PersistenceError(
            f"snapshot format version {manifest.get('format_version')!r} "
            f"not supported (expected {STORE_FORMAT_VERSION})"
        )
    entries: dict[str, AttackVectorEntry] = {}
    for database in manifest.get("counts", {}):
        path = store_dir / f"{database.lower()}.json"
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise PersistenceError(f"cannot read snapshot part {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise PersistenceError(f"corrupt snapshot part {path}: {exc}") from exc
        for raw in payload.get("entries", []):
            entry = AttackVectorEntry.from_dict(raw)
            entries[entry.identifier] = entry
    snapshot = CorpusSnapshot(
        entries=entries,
        source_versions=manifest.get("source_versions", {}),
        ingested_at=manifest.get("ingested_at", _EPOCH),
        snapshot_id=manifest.get("snapshot_id", ""),
    )
    expected = _content_id(snapshot.entries, snapshot.source_versions)
    if snapshot.snapshot_id != expected:
        raise PersistenceError(
            f"snapshot content does not match its recorded id "
            f"({snapshot.snapshot_id} != {expected})"
        )
    return snapshot
