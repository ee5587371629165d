"""System model: a directed multigraph of assets annotated with keywords.

Each vertex (asset) and edge (dependency between assets) carries a
descriptor set over seven fixed categories.  Keywords in those categories
are what the analysis matches against corpus text.

Models are exchanged as GraphML.  The profile used here:

- one ``<key>`` per category, declared ``for="all"`` with ``attr.name``
  equal to the category (documents written by other tools may declare
  separate node/edge keys; anything whose ``attr.name`` is a category is
  accepted on either domain);
- data values are semicolon-delimited keyword lists, backslash-escaped
  (``\\;`` for a literal semicolon, ``\\\\`` for a literal backslash);
- a ``label`` key holds the human-readable asset name;
- the graph's ``edgedefault`` and each edge's ``directed`` attribute are
  honored; unknown keys are preserved opaquely and written back on save.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace

from cybok.corpus.xmlutil import local_name, parse_xml
from cybok.errors import ValidationError

logger = logging.getLogger(__name__)

CATEGORIES = (
    "operating_system",
    "device_name",
    "communication",
    "hardware",
    "firmware",
    "software",
    "entry_points",
)

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _clean_keywords(words) -> tuple[str, ...]:
    """Trim, drop empties, and collapse duplicates preserving order."""
    seen = []
    for word in words:
        word = str(word).strip()
        if word and word not in seen:
            seen.append(word)
    return tuple(seen)


@dataclass(frozen=True)
class DescriptorSet:
    operating_system: tuple[str, ...] = ()
    device_name: tuple[str, ...] = ()
    communication: tuple[str, ...] = ()
    hardware: tuple[str, ...] = ()
    firmware: tuple[str, ...] = ()
    software: tuple[str, ...] = ()
    entry_points: tuple[str, ...] = ()

    def __post_init__(self):
        for category in CATEGORIES:
            object.__setattr__(self, category, _clean_keywords(getattr(self, category)))

    @classmethod
    def from_mapping(cls, mapping) -> "DescriptorSet":
        unknown = set(mapping) - set(CATEGORIES)
        if unknown:
            raise ValidationError(f"unknown descriptor categories: {sorted(unknown)}")
        return cls(**{cat: tuple(mapping.get(cat, ())) for cat in CATEGORIES})

    def category(self, name: str) -> tuple[str, ...]:
        if name not in CATEGORIES:
            raise ValidationError(f"unknown descriptor category {name!r}")
        return getattr(self, name)

    def with_category(self, name: str, keywords) -> "DescriptorSet":
        if name not in CATEGORIES:
            raise ValidationError(f"unknown descriptor category {name!r}")
        return replace(self, **{name: tuple(keywords)})

    def as_mapping(self) -> dict[str, list[str]]:
        return {cat: list(getattr(self, cat)) for cat in CATEGORIES}

    def items(self):
        for cat in CATEGORIES:
            yield cat, getattr(self, cat)


@dataclass
class Asset:
    id: str
    label: str = ""
    descriptors: DescriptorSet = field(default_factory=DescriptorSet)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class DependencyEdge:
    id: str
    source: str
    target: str
    # None inherits the whole-graph default
    directed: bool | None = None
    descriptors: DescriptorSet = field(default_factory=DescriptorSet)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class SystemModel:
    assets: dict[str, Asset] = field(default_factory=dict)
    edges: list[DependencyEdge] = field(default_factory=list)
    directed: bool = False
    extra_keys: list[dict] = field(default_factory=list)

    def validate(self) -> None:
        seen: set[str] = set()
        for asset_id, asset in self.assets.items():
            if not asset_id:
                raise ValidationError("asset with empty id")
            if asset_id != asset.id:
                raise ValidationError(f"asset map key {asset_id!r} != asset id {asset.id!r}")
            seen.add(asset_id)
        edge_ids: set[str] = set()
        for edge in self.edges:
            if not edge.id:
                raise ValidationError(f"edge {edge.source}->{edge.target} has empty id")
            if edge.id in edge_ids:
                raise ValidationError(f"duplicate edge id {edge.id!r}")
            if edge.id in seen:
                raise ValidationError(
                    f"edge id {edge.id!r} collides with an asset id"
                )
            edge_ids.add(edge.id)
            for endpoint in (edge.source, edge.target):
                if endpoint not in self.assets:
                    raise ValidationError(
                        f"edge {edge.id!r} references missing asset {endpoint!r}"
                    )

    def edge_directed(self, edge: DependencyEdge) -> bool:
        return self.directed if edge.directed is None else edge.directed

    def edge_by_id(self, edge_id: str) -> DependencyEdge | None:
        for edge in self.edges:
            if edge.id == edge_id:
                return edge
        return None

    def element(self, ref: str):
        """Resolve an element ref to ("asset"|"edge", object) or None."""
        if ref in self.assets:
            return ("asset", self.assets[ref])
        edge = self.edge_by_id(ref)
        if edge is not None:
            return ("edge", edge)
        return None

    def label_for(self, ref: str) -> str:
        kind = self.element(ref)
        if kind is None:
            return ref
        if kind[0] == "asset":
            return kind[1].label or ref
        return ref


def all_descriptors(model: SystemModel) -> list[tuple[str, str, str]]:
    """Every (element-ref, category, keyword) in deterministic order.

    Assets in id order, then edges in id order; categories in schema
    order; keywords in stored order.
    """
    out = []
    for asset_id in sorted(model.assets):
        for category, keywords in model.assets[asset_id].descriptors.items():
            for keyword in keywords:
                out.append((asset_id, category, keyword))
    for edge in sorted(model.edges, key=lambda e: e.id):
        for category, keywords in edge.descriptors.items():
            for keyword in keywords:
                out.append((edge.id, category, keyword))
    return out


def join_keywords(keywords) -> str:
    return ";".join(
        k.replace("\\", "\\\\").replace(";", "\\;") for k in keywords
    )


def split_keywords(value: str) -> list[str]:
    words = []
    current = []
    escaped = False
    for ch in value:
        if escaped:
            current.append(ch)
            escaped = False
        elif ch == "\\":
            escaped = True
        elif ch == ";":
            words.append("".join(current))
            current = []
        else:
            current.append(ch)
    if escaped:
        current.append("\\")
    words.append("".join(current))
    return [w for w in (word.strip() for word in words) if w]


def load_graphml(raw: bytes) -> SystemModel:
    """Parse GraphML bytes into a validated SystemModel."""
    root = parse_xml(raw)
    if local_name(root.tag) != "graphml":
        raise ValidationError(f"not a GraphML document (root <{local_name(root.tag)}>)")

    # key id -> (attr.name, domain); unknown keys remembered for round-trip
    key_names: dict[str, tuple[str, str]] = {}
    extra_keys: list[dict] = []
    for key in (n for n in root if local_name(n.tag) == "key"):
        key_id = key.get("id") or ""
        attr_name = key.get("attr.name") or key_id
        domain = key.get("for") or "all"
        key_names[key_id] = (attr_name, domain)
        if attr_name not in CATEGORIES and attr_name != "label":
            extra_keys.append(
                {
                    "id": key_id,
                    "for": domain,
                    "attr.name": attr_name,
                    "attr.type": key.get("attr.type") or "string",
                }
            )

    graphs = [n for n in root if local_name(n.tag) == "graph"]
    if not graphs:
        raise ValidationError("GraphML document contains no <graph>")
    graph = graphs[0]
    directed = (graph.get("edgedefault") or "undirected") == "directed"

    def read_data(node) -> tuple[DescriptorSet, str, dict[str, str]]:
        categories: dict[str, list[str]] = {}
        label = ""
        extra: dict[str, str] = {}
        for data in (n for n in node if local_name(n.tag) == "data"):
            key_id = data.get("key") or ""
            attr_name = key_names.get(key_id, (key_id, "all"))[0]
            text = data.text or ""
            if attr_name in CATEGORIES:
                categories.setdefault(attr_name, []).extend(split_keywords(text))
            elif attr_name == "label":
                label = text.strip()
            else:
                extra[key_id] = text
        return DescriptorSet.from_mapping(categories), label, extra

    model = SystemModel(directed=directed, extra_keys=extra_keys)
    for node in (n for n in graph if local_name(n.tag) == "node"):
        node_id = node.get("id") or ""
        if node_id in model.assets:
            raise ValidationError(f"duplicate node id {node_id!r}")
        descriptors, label, extra = read_data(node)
        model.assets[node_id] = Asset(
            id=node_id, label=label, descriptors=descriptors, extra=extra
        )

    for position, node in enumerate(n for n in graph if local_name(n.tag) == "edge"):
        edge_id = node.get("id") or f"edge-{position}"
        directed_attr = node.get("directed")
        descriptors, _, extra = read_data(node)
        model.edges.append(
            DependencyEdge(
                id=edge_id,
                source=node.get("source") or "",
                target=node.get("target") or "",
                directed=None if directed_attr is None else directed_attr == "true",
                descriptors=descriptors,
                extra=extra,
            )
        )

    model.validate()
    return model


def save_graphml(model: SystemModel) -> bytes:
    """Serialize a model; load_graphml(save_graphml(m)) == m."""
    model.validate()
    root = ET.Element("graphml", xmlns=GRAPHML_NS)
    label_key = ET.SubElement(root, "key")
    label_key.set("id", "label")
    label_key.set("for", "node")
    label_key.set("attr.name", "label")
    label_key.set("attr.type", "string")
    for category in CATEGORIES:
        key = ET.SubElement(root, "key")
        key.set("id", category)
        key.set("for", "all")
        key.set("attr.name", category)
        key.set("attr.type", "string")
    for declaration in model.extra_keys:
        key = ET.SubElement(root, "key")
        key.set("id", declaration["id"])
        key.set("for", declaration.get("for", "all"))
        key.set("attr.name", declaration.get("attr.name", declaration["id"]))
        key.set("attr.type", declaration.get("attr.type", "string"))

    graph = ET.SubElement(
        root,
        "graph",
        id="G",
        edgedefault="directed" if model.directed else "undirected",
    )

    def write_data(parent, descriptors: DescriptorSet, extra: dict[str, str]):
        for category, keywords in descriptors.items():
            if keywords:
                data = ET.SubElement(parent, "data", key=category)
                data.text = join_keywords(keywords)
        for key_id in sorted(extra):
            data = ET.SubElement(parent, "data", key=key_id)
            data.text = extra[key_id]

    for asset_id in sorted(model.assets):
        asset = model.assets[asset_id]
        node = ET.SubElement(graph, "node", id=asset_id)
        if asset.label:
            data = ET.SubElement(node, "data", key="label")
            data.text = asset.label
        write_data(node, asset.descriptors, asset.extra)

    for edge in model.edges:
        attrs = {"id": edge.id, "source": edge.source, "target": edge.target}
        if edge.directed is not None:
            attrs["directed"] = "true" if edge.directed else "false"
        node = ET.SubElement(graph, "edge", **attrs)
        write_data(node, edge.descriptors, edge.extra)

    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"
