"""Positional inverted index over normalized attack-vector text.

Built once per snapshot so queries never re-normalize the corpus.  The
matching relation is deliberately boolean: a keyword either appears in an
entry's stemmed token stream or it does not.  Multi-token keywords must
appear as a contiguous phrase — "input validation" may not match a
document that merely contains both words in unrelated sentences.

Persisted form (one file, UTF-8):

    CYBOKIDX <format-version> <corpus_ref> <doc_count>
    <canonical JSON: token -> identifier -> [positions]>

The header makes the file self-describing; an index is only ever valid
against the exact snapshot (``corpus_ref``) it was built from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from cybok.corpus.store import CorpusSnapshot
from cybok.errors import CorpusError, PersistenceError, StaleIndexError
from cybok.index.normalize import normalize

INDEX_MAGIC = "CYBOKIDX"
INDEX_FORMAT_VERSION = 1
INDEX_FILENAME = "index.cybok"


@dataclass
class NormalizedDocument:
    identifier: str
    tokens: list[str]


@dataclass
class SearchIndex:
    # token -> identifier -> positions (strictly increasing)
    postings: dict[str, dict[str, tuple[int, ...]]]
    doc_count: int
    corpus_ref: str
    _doc_ids: frozenset[str] = field(default_factory=frozenset)

    def identifiers(self) -> frozenset[str]:
        return self._doc_ids


def normalize_entry(identifier: str, text: str) -> NormalizedDocument:
    return NormalizedDocument(identifier=identifier, tokens=normalize(text))


def build_index(snapshot: CorpusSnapshot) -> SearchIndex:
    """Index every snapshot entry under its normalized name + description."""
    if not snapshot.entries:
        raise CorpusError("cannot index an empty snapshot")
    postings: dict[str, dict[str, tuple[int, ...]]] = {}
    for identifier in sorted(snapshot.entries):
        entry = snapshot.entries[identifier]
        doc = normalize_entry(identifier, entry.text)
        seen: dict[str, list[int]] = {}
        for position, token in enumerate(doc.tokens):
            seen.setdefault(token, []).append(position)
        for token, positions in seen.items():
            postings.setdefault(token, {})[identifier] = tuple(positions)
    return SearchIndex(
        postings=postings,
        doc_count=len(snapshot.entries),
        corpus_ref=snapshot.snapshot_id,
        _doc_ids=frozenset(snapshot.entries),
    )


def query(index: SearchIndex, keyword: str) -> list[str]:
    """Identifiers whose token stream contains the normalized keyword.

    Single-token keywords are a membership test; multi-token keywords
    require the tokens as a contiguous phrase.  Returns a deduplicated,
    lexicographically sorted list (boolean match — no ranking).
    """
    tokens = normalize(keyword)
    if not tokens:
        return []
    first = index.postings.get(tokens[0])
    if first is None:
        return []
    if len(tokens) == 1:
        return sorted(first)
    candidates = set(first)
    rest = []
    for token in tokens[1:]:
        entry_map = index.postings.get(token)
        if entry_map is None:
            return []
        candidates &= set(entry_map)
        rest.append(entry_map)
    matches = []
    for identifier in candidates:
        starts = first[identifier]
        position_sets = [set(entry_map[identifier]) for entry_map in rest]
        if any(
            all(start + shift + 1 in positions
                for shift, positions in enumerate(position_sets))
            for start in starts
        ):
            matches.append(identifier)
    return sorted(matches)


def _index_path(target: Path) -> Path:
    target = Path(target)
    return target / INDEX_FILENAME if target.is_dir() or not target.suffix else target


def save_index(index: SearchIndex, out_dir: Path) -> Path:
    """Persist the index; deterministic byte-for-byte for equal inputs."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / INDEX_FILENAME
    body = json.dumps(
        {
            token: {ident: list(positions) for ident, positions in sorted(docs.items())}
            for token, docs in sorted(index.postings.items())
        },
        ensure_ascii=False,
        sort_keys=True,
        indent=None,
        separators=(",", ":"),
    )
    header = f"{INDEX_MAGIC} {INDEX_FORMAT_VERSION} {index.corpus_ref} {index.doc_count}"
    try:
        path.write_text(header + "\n" + body + "\n", encoding="utf-8")
    except OSError as exc:
        raise PersistenceError(f"cannot write index to {path}: {exc}") from exc
    return path


def load_index(path: Path, snapshot: CorpusSnapshot | None = None) -> SearchIndex:
    """Load a persisted index, optionally pinning it to a snapshot.

    When ``snapshot`` is given and the stored ``corpus_ref`` differs, the
    index is stale: it describes some other corpus and must be rebuilt
    with ``cybok index``.
    """
    path = _index_path(Path(path))
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PersistenceError(f"cannot read index {path}: {exc}") from exc
    header, _, body = text.partition("\n")
    parts = header.split()
    if len(parts) != 4 or parts[0] != INDEX_MAGIC:
        raise PersistenceError(f"{path} is not an index file (bad header)")
    if parts[1] != str(INDEX_FORMAT_VERSION):
        raise PersistenceError(
            f"index format version {parts[1]} not supported "
            f"(expected {INDEX_FORMAT_VERSION})"
        )
    corpus_ref, doc_count = parts[2], int(parts[3])
    if snapshot is not None and corpus_ref != snapshot.snapshot_id:
        raise StaleIndexError(
            f"index at {path} was built from {corpus_ref}, not from the "
            f"provided snapshot {snapshot.snapshot_id}; rebuild it with "
            f"`cybok index`"
        )
    try:
        raw_postings = json.loads(body)
    except json.JSONDecodeError as exc:
        raise PersistenceError(f"corrupt index body in {path}: {exc}") from exc
    postings = {
        token: {ident: tuple(positions) for ident, positions in docs.items()}
        for token, docs in raw_postings.items()
    }
    doc_ids = frozenset(
        ident for docs in postings.values() for ident in docs
    )
    return SearchIndex(
        postings=postings,
        doc_count=doc_count,
        corpus_ref=corpus_ref,
        _doc_ids=doc_ids if snapshot is None else frozenset(snapshot.entries),
    )
