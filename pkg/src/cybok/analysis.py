"""Core analysis: keyword association, attack surface, exploit chains.

Everything here is a pure function over an immutable model/index pair.

- ``associate`` walks every descriptor keyword of every model element and
  records which corpus entries the keyword matches (the evidence).
- ``attack_surface`` keeps the vertices whose *entry_points* keywords
  produced evidence — the places an attacker can first touch.
- ``exploit_chains`` enumerates simple paths from surface vertices to a
  target and keeps the admissible ones: every vertex and every edge on
  the path must itself carry evidence.
- ``rollup`` abstracts matched CVEs upward to the weaknesses (CWE) and
  attack patterns (CAPEC) they exemplify, via the cross-database
  references carried in the corpus.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from cybok.corpus.store import CorpusSnapshot
from cybok.errors import ValidationError
from cybok.index.search import SearchIndex, query
from cybok.model import SystemModel, all_descriptors

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEN = 8
DEFAULT_PATH_CAP = 10_000

Path_ = tuple[str, ...]  # alternating asset id, edge id, ..., asset id


@dataclass(frozen=True)
class EvidenceRecord:
    element: str
    category: str
    keyword: str
    attack_vector: str


@dataclass(frozen=True)
class AttackSurfaceElement:
    asset: str
    # (keyword, attack-vector id) pairs, all from entry_points
    triggering_keywords: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ExploitChain:
    source: str
    target: str
    path: Path_
    evidence: dict = field(hash=False, compare=True)
    trivial: bool = False


@dataclass
class ChainResult:
    target: str
    max_len: int
    truncated: bool
    chains: list[ExploitChain]


@dataclass(frozen=True)
class RollupEntry:
    cves: tuple[str, ...] = ()
    derived_cwes: tuple[str, ...] = ()
    derived_capecs: tuple[str, ...] = ()
    direct_cwes: tuple[str, ...] = ()
    direct_capecs: tuple[str, ...] = ()

    def identifiers(self) -> frozenset[str]:
        return frozenset(
            self.cves
            + self.derived_cwes
            + self.derived_capecs
            + self.direct_cwes
            + self.direct_capecs
        )


@dataclass
class AbstractionRollup:
    per_element: dict[str, RollupEntry] = field(default_factory=dict)


def associate(model: SystemModel, index: SearchIndex) -> list[EvidenceRecord]:
    """Match every descriptor keyword against the corpus.

    Output order follows the descriptor enumeration (assets by id, edges
    by id, categories in schema order, keywords in stored order) with
    matched identifiers sorted; identical records are emitted once.
    """
    records: list[EvidenceRecord] = []
    seen: set[EvidenceRecord] = set()
    for element, category, keyword in all_descriptors(model):
        for identifier in query(index, keyword):
            record = EvidenceRecord(
                element=element,
                category=category,
                keyword=keyword,
                attack_vector=identifier,
            )
            if record not in seen:
                seen.add(record)
                records.append(record)
    return records


def attack_surface(
    model: SystemModel, evidence: list[EvidenceRecord]
) -> list[AttackSurfaceElement]:
    """Vertices with entry-point evidence, in asset-id order."""
    triggers: dict[str, list[tuple[str, str]]] = {}
    for record in evidence:
        if record.category != "entry_points":
            continue
        if record.element not in model.assets:
            continue  # edges are never surface members
        pair = (record.keyword, record.attack_vector)
        bucket = triggers.setdefault(record.element, [])
        if pair not in bucket:
            bucket.append(pair)
    return [
        AttackSurfaceElement(asset=asset, triggering_keywords=tuple(sorted(pairs)))
        for asset, pairs in sorted(triggers.items())
    ]


def _adjacency(model: SystemModel) -> dict[str, list[tuple[str, str]]]:
    adjacency: dict[str, list[tuple[str, str]]] = {a: [] for a in model.assets}
    for edge in model.edges:
        adjacency[edge.source].append((edge.target, edge.id))
        if not model.edge_directed(edge):
            adjacency[edge.target].append((edge.source, edge.id))
    for neighbors in adjacency.values():
        neighbors.sort()
    return adjacency


def enumerate_simple_paths(
    model: SystemModel,
    source: str,
    target: str,
    max_len: int = DEFAULT_MAX_LEN,
    cap: int = DEFAULT_PATH_CAP,
) -> tuple[list[Path_], bool]:
    """All vertex-simple paths of at most ``max_len`` edges.

    Undirected edges are traversable both ways.  Paths come back in
    lexicographic order of their vertex-id sequence (edge ids break
    ties), which is what a DFS with sorted adjacency emits.  Returns
    ``(paths, truncated)`` — truncated is set when the ``cap`` stopped
    the enumeration early.
    """
    for ref in (source, target):
        if ref not in model.assets:
            raise ValidationError(f"unknown asset {ref!r}")
    if source == target:
        raise ValidationError("source and target must differ")
    if max_len < 1:
        return [], False
    adjacency = _adjacency(model)
    paths: list[Path_] = []
    truncated = False
    on_path = {source}
    trail: list[str] = [source]

    def walk(vertex: str, edges_used: int) -> bool:
        nonlocal truncated
        for neighbor, edge_id in adjacency[vertex]:
            if neighbor in on_path:
                continue
            trail.append(edge_id)
            trail.append(neighbor)
            if neighbor == target:
                if len(paths) >= cap:
                    truncated = True
                    trail.pop()
                    trail.pop()
                    return False
                paths.append(tuple(trail))
            elif edges_used + 1 < max_len:
                on_path.add(neighbor)
                keep_going = walk(neighbor, edges_used + 1)
                on_path.discard(neighbor)
                if not keep_going:
                    trail.pop()
                    trail.pop()
                    return False
            trail.pop()
            trail.pop()
        return True

    walk(source, 0)
    return paths, truncated


def evidence_by_element(evidence: list[EvidenceRecord]) -> dict[str, list[EvidenceRecord]]:
    grouped: dict[str, list[EvidenceRecord]] = {}
    for record in evidence:
        grouped.setdefault(record.element, []).append(record)
    return grouped


def exploit_chains(
    model: SystemModel,
    evidence: list[EvidenceRecord],
    surface: list[AttackSurfaceElement],
    target: str,
    max_len: int = DEFAULT_MAX_LEN,
    cap: int = DEFAULT_PATH_CAP,
) -> ChainResult:
    """Admissible simple paths from each surface vertex to ``target``.

    A path is admissible only when every vertex and every edge on it has
    at least one evidence record.  A surface vertex equal to the target
    yields the trivial single-vertex chain (when the vertex itself has
    evidence), flagged ``trivial``.
    """
    if target not in model.assets:
        raise ValidationError(f"unknown asset {target!r}")
    grouped = evidence_by_element(evidence)
    chains: list[ExploitChain] = []
    truncated = False
    for element in surface:
        source = element.asset
        if source == target:
            if grouped.get(source):
                chains.append(
                    ExploitChain(
                        source=source,
                        target=target,
                        path=(source,),
                        evidence={source: list(grouped[source])},
                        trivial=True,
                    )
                )
            continue
        paths, cut = enumerate_simple_paths(model, source, target, max_len, cap)
        truncated = truncated or cut
        for path in paths:
            if all(grouped.get(ref) for ref in path):
                chains.append(
                    ExploitChain(
                        source=source,
                        target=target,
                        path=path,
                        evidence={ref: list(grouped[ref]) for ref in path},
                    )
                )
    chains.sort(key=lambda c: (c.source, c.path))
    return ChainResult(target=target, max_len=max_len, truncated=truncated, chains=chains)


def rollup(evidence: list[EvidenceRecord], snapshot: CorpusSnapshot) -> AbstractionRollup:
    """Abstract matched CVEs upward: CVE -> CWE -> CAPEC.

    Derived sets are restricted to identifiers actually present in the
    snapshot; a matched identifier missing from the snapshot is skipped
    with a warning (it cannot be resolved for abstraction).
    """
    result = AbstractionRollup()
    for element, records in evidence_by_element(evidence).items():
        cves: set[str] = set()
        direct_cwes: set[str] = set()
        direct_capecs: set[str] = set()
        for record in records:
            entry = snapshot.lookup(record.attack_vector)
            if entry is None:
                logger.warning(
                    "evidence for %s references %s which is not in the snapshot",
                    element,
                    record.attack_vector,
                )
                continue
            if entry.database == "CVE":
                cves.add(entry.identifier)
            elif entry.database == "CWE":
                direct_cwes.add(entry.identifier)
            elif entry.database == "CAPEC":
                direct_capecs.add(entry.identifier)
        derived_cwes: set[str] = set()
        for cve_id in cves:
            for ref in snapshot.entries[cve_id].related_weaknesses:
                if ref in snapshot.entries:
                    derived_cwes.add(ref)
        derived_capecs: set[str] = set()
        for cwe_id in derived_cwes | direct_cwes:
            for ref in snapshot.entries[cwe_id].related_attack_patterns:
                if ref in snapshot.entries:
                    derived_capecs.add(ref)
        for cve_id in cves:
            for ref in snapshot.entries[cve_id].related_attack_patterns:
                if ref in snapshot.entries:
                    derived_capecs.add(ref)
        result.per_element[element] = RollupEntry(
            cves=tuple(sorted(cves)),
            derived_cwes=tuple(sorted(derived_cwes)),
            derived_capecs=tuple(sorted(derived_capecs)),
            direct_cwes=tuple(sorted(direct_cwes)),
            direct_capecs=tuple(sorted(direct_capecs)),
        )
    return result
