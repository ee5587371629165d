"""Report assembly and static renderings.

The report document is the one structured artifact every consumer shares:
the CLI writes it, the service returns it verbatim, and the UI mirrors its
types.  Field names are stable; ``format_version`` guards evolution.

Renderings are DOT text (Graphviz-compatible).  Layout is deliberately
left to whatever consumes the DOT — the analysis stays coordinate-free.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from cybok.analysis import (
    DEFAULT_MAX_LEN,
    AbstractionRollup,
    AttackSurfaceElement,
    ChainResult,
    EvidenceRecord,
    associate,
    attack_surface,
    exploit_chains,
    rollup,
)
from cybok.corpus.store import CorpusSnapshot
from cybok.errors import ValidationError
from cybok.index.search import SearchIndex
from cybok.model import SystemModel

REPORT_FORMAT = "cybok-report"
REPORT_FORMAT_VERSION = 1

_DB_RANK = {"CVE": 0, "CWE": 1, "CAPEC": 2}


def _element_kind(model: SystemModel, ref: str) -> str:
    resolved = model.element(ref)
    return resolved[0] if resolved else "unknown"


def evidence_to_dicts(model: SystemModel, evidence: list[EvidenceRecord]) -> list[dict]:
    return [
        {
            "element": r.element,
            "element_kind": _element_kind(model, r.element),
            "category": r.category,
            "keyword": r.keyword,
            "attack_vector": r.attack_vector,
        }
        for r in evidence
    ]


def surface_to_dicts(
    model: SystemModel, surface: list[AttackSurfaceElement]
) -> list[dict]:
    return [
        {
            "asset": s.asset,
            "label": model.label_for(s.asset),
            "triggering_keywords": [
                {"keyword": keyword, "attack_vector": identifier}
                for keyword, identifier in s.triggering_keywords
            ],
        }
        for s in surface
    ]


def rollup_to_dict(result: AbstractionRollup) -> dict:
    return {
        element: {
            "cves": list(entry.cves),
            "derived_cwes": list(entry.derived_cwes),
            "derived_capecs": list(entry.derived_capecs),
            "direct_cwes": list(entry.direct_cwes),
            "direct_capecs": list(entry.direct_capecs),
        }
        for element, entry in sorted(result.per_element.items())
    }


def chains_to_dict(
    model: SystemModel, result: ChainResult, roll: AbstractionRollup
) -> dict:
    chains = []
    for chain in result.chains:
        elements = []
        for ref in chain.path:
            entry = roll.per_element.get(ref)
            elements.append(
                {
                    "ref": ref,
                    "kind": _element_kind(model, ref),
                    "label": model.label_for(ref),
                    "evidence": [
                        {
                            "category": r.category,
                            "keyword": r.keyword,
                            "attack_vector": r.attack_vector,
                        }
                        for r in chain.evidence.get(ref, [])
                    ],
                    "rollup": {
                        "cves": list(entry.cves) if entry else [],
                        "derived_cwes": list(entry.derived_cwes) if entry else [],
                        "derived_capecs": list(entry.derived_capecs) if entry else [],
                        "direct_cwes": list(entry.direct_cwes) if entry else [],
                        "direct_capecs": list(entry.direct_capecs) if entry else [],
                    },
                }
            )
        chains.append(
            {
                "source": chain.source,
                "target": chain.target,
                "trivial": chain.trivial,
                "path": list(chain.path),
                "elements": elements,
            }
        )
    return {
        "target": result.target,
        "max_len": result.max_len,
        "truncated": result.truncated,
        "chains": chains,
    }


def build_report(
    model: SystemModel,
    snapshot: CorpusSnapshot,
    index: SearchIndex,
    target: str | None = None,
    max_len: int = DEFAULT_MAX_LEN,
) -> dict:
    """Run the full analysis pipeline and assemble the report document."""
    evidence = associate(model, index)
    surface = attack_surface(model, evidence)
    roll = rollup(evidence, snapshot)
    report = {
        "format": REPORT_FORMAT,
        "format_version": REPORT_FORMAT_VERSION,
        "corpus_ref": snapshot.snapshot_id,
        "ingested_at": snapshot.ingested_at,
        "model": {
            "assets": len(model.assets),
            "edges": len(model.edges),
            "directed": model.directed,
        },
        "evidence": evidence_to_dicts(model, evidence),
        "surface": surface_to_dicts(model, surface),
        "rollup": rollup_to_dict(roll),
        "results": results_rows(evidence, roll, snapshot, model),
        "chains": None,
    }
    if target is not None:
        chains = exploit_chains(model, evidence, surface, target, max_len)
        report["chains"] = chains_to_dict(model, chains, roll)
    return report


def dump_report(report: dict) -> str:
    """Canonical serialization — byte-identical for equal reports."""
    return json.dumps(report, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


@dataclass
class RenderSpec:
    kind: str  # topology | surface | chains
    highlight: set[str] = field(default_factory=set)
    annotations: dict[str, list[str]] = field(default_factory=dict)


def _dot_escape(text: str) -> str:
    return (
        text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    )


def render_graph(model: SystemModel, spec: RenderSpec) -> str:
    """Render the model as deterministic DOT text.

    Highlighted assets are filled; highlighted edges are emphasized.
    Annotations append to the element label, one per line.
    """
    known = set(model.assets) | {e.id for e in model.edges}
    for ref in set(spec.highlight) | set(spec.annotations):
        if ref not in known:
            raise ValidationError(f"render spec references unknown element {ref!r}")
    lines = [f"// cybok {spec.kind} rendering", "digraph system {"]
    lines.append('  node [shape=box, fontname="Helvetica"];')
    lines.append('  edge [fontname="Helvetica"];')
    for asset_id in sorted(model.assets):
        asset = model.assets[asset_id]
        label_parts = [asset.label or asset_id]
        label_parts.extend(spec.annotations.get(asset_id, []))
        attrs = [f'label="{_dot_escape(chr(10).join(label_parts))}"']
        if asset_id in spec.highlight:
            attrs.append('style=filled')
            attrs.append('fillcolor="#f4cccc"')
            attrs.append("penwidth=2")
        lines.append(f'  "{_dot_escape(asset_id)}" [{", ".join(attrs)}];')
    for edge in sorted(model.edges, key=lambda e: e.id):
        label_parts = [edge.id]
        label_parts.extend(spec.annotations.get(edge.id, []))
        attrs = [f'label="{_dot_escape(chr(10).join(label_parts))}"']
        if not model.edge_directed(edge):
            attrs.append("dir=none")
        if edge.id in spec.highlight:
            attrs.append('color="#cc0000"')
            attrs.append("penwidth=3")
        lines.append(
            f'  "{_dot_escape(edge.source)}" -> "{_dot_escape(edge.target)}" '
            f'[{", ".join(attrs)}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def surface_spec(surface: list[AttackSurfaceElement]) -> RenderSpec:
    highlight = {s.asset for s in surface}
    annotations = {
        s.asset: [f"{kw} -> {av}" for kw, av in s.triggering_keywords]
        for s in surface
    }
    return RenderSpec(kind="surface", highlight=highlight, annotations=annotations)


def chains_spec(result: ChainResult) -> RenderSpec:
    highlight: set[str] = set()
    annotations: dict[str, list[str]] = {}
    for chain in result.chains:
        for ref in chain.path:
            highlight.add(ref)
            ids = sorted({r.attack_vector for r in chain.evidence.get(ref, [])})
            if ids:
                existing = annotations.setdefault(ref, [])
                for identifier in ids:
                    if identifier not in existing:
                        existing.append(identifier)
    for ref in annotations:
        annotations[ref] = sorted(annotations[ref])
    return RenderSpec(kind="chains", highlight=highlight, annotations=annotations)


def spec_from_report(report: dict, kind: str) -> RenderSpec:
    """Rebuild a render spec from a persisted report document."""
    if kind == "topology":
        return RenderSpec(kind="topology")
    if kind == "surface":
        highlight: set[str] = set()
        annotations: dict[str, list[str]] = {}
        for element in report.get("surface") or []:
            asset = element["asset"]
            highlight.add(asset)
            annotations[asset] = [
                f"{pair['keyword']} -> {pair['attack_vector']}"
                for pair in element["triggering_keywords"]
            ]
        return RenderSpec(kind="surface", highlight=highlight, annotations=annotations)
    if kind == "chains":
        section = report.get("chains")
        if not section:
            raise ValidationError(
                "report has no chains section; re-run the analysis with a target"
            )
        highlight = set()
        annotations = {}
        for chain in section["chains"]:
            for element in chain["elements"]:
                ref = element["ref"]
                highlight.add(ref)
                ids = sorted({r["attack_vector"] for r in element["evidence"]})
                existing = annotations.setdefault(ref, [])
                for identifier in ids:
                    if identifier not in existing:
                        existing.append(identifier)
        for ref in annotations:
            annotations[ref] = sorted(annotations[ref])
        return RenderSpec(kind="chains", highlight=highlight, annotations=annotations)
    raise ValidationError(f"unknown render kind {kind!r}")


_SENTENCE_END = re.compile(r"(?<=[.!?])\s")


def _first_sentence(text: str) -> str:
    text = text.strip()
    if not text:
        return ""
    return _SENTENCE_END.split(text, maxsplit=1)[0].strip()


def _row_sort_key(identifier: str):
    db = identifier.split("-", 1)[0]
    return (_DB_RANK.get(db, 9), identifier)


def results_rows(
    evidence: list[EvidenceRecord],
    roll: AbstractionRollup,
    snapshot: CorpusSnapshot,
    model: SystemModel,
) -> list[dict]:
    """Structured per-element results: direct matches plus rollup members.

    One row per (element, attack vector), grouped by element (assets
    first, then edges, each in id order).  The description is the entry
    name, or the first sentence for untitled entries (CVEs).
    """
    per_element: dict[str, set[str]] = {}
    for record in evidence:
        per_element.setdefault(record.element, set()).add(record.attack_vector)
    for element, entry in roll.per_element.items():
        per_element.setdefault(element, set()).update(entry.identifiers())

    ordered_elements = [
        ref for ref in sorted(model.assets) if ref in per_element
    ] + [
        edge.id
        for edge in sorted(model.edges, key=lambda e: e.id)
        if edge.id in per_element
    ]

    rows: list[dict] = []
    for ref in ordered_elements:
        label = model.label_for(ref)
        for identifier in sorted(per_element[ref], key=_row_sort_key):
            entry = snapshot.lookup(identifier)
            if entry is None:
                description = ""
            else:
                description = entry.name or _first_sentence(entry.description)
            rows.append(
                {
                    "element": ref,
                    "label": label,
                    "attack_vector": identifier,
                    "description": description,
                }
            )
    return rows


def emit_results_table(
    evidence: list[EvidenceRecord],
    roll: AbstractionRollup,
    snapshot: CorpusSnapshot,
    model: SystemModel,
) -> str:
    """Aligned text rendering of :func:`results_rows`."""
    rows = results_rows(evidence, roll, snapshot, model)
    headers = ("Model Element", "Attack Vector", "Description")
    widths = [len(h) for h in headers]
    for row in rows:
        widths[0] = max(widths[0], len(row["label"]))
        widths[1] = max(widths[1], len(row["attack_vector"]))
    # The description column is left ragged; padding it would bloat
    # every row to the longest sentence in the corpus.
    fmt = f"{{:<{widths[0]}}}  {{:<{widths[1]}}}  {{}}"
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    previous_label = None
    for row in rows:
        display = row["label"] if row["label"] != previous_label else ""
        lines.append(fmt.format(display, row["attack_vector"], row["description"]).rstrip())
        previous_label = row["label"]
    return "\n".join(lines) + "\n"
