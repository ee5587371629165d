"""Independent oracles and randomized instance generators for the tests.

The oracles deliberately take a different route than the package:
keyword association is a brute-force scan over re-normalized documents
(no inverted index), and path enumeration is a breadth-first expansion
of partial paths (no recursion, no shared adjacency helper).
"""

import random

from cybok.corpus.entries import AttackVectorEntry
from cybok.corpus.store import build_snapshot
from cybok.index.normalize import normalize
from cybok.model import (
    CATEGORIES,
    Asset,
    DependencyEdge,
    DescriptorSet,
    SystemModel,
    all_descriptors,
)

# Plain words plus a few stopwords so some keywords normalize to nothing.
VOCABULARY = (
    "rotor", "vane", "crank", "lattice", "ember", "quartz", "falcon",
    "mural", "sonar", "prism", "cobalt", "raven", "tundra", "glyph",
    "onyx", "zephyr", "anvil", "baskets", "carving", "dunes", "eroded",
    "fjord", "gliders", "harbor", "ingots", "jousting", "kelp",
    "looms", "mosaic", "nectar", "orchard", "plume", "quiver",
    "rippled", "saddle", "trellis", "umber", "velvet", "willow",
    "yonder", "zinc", "the", "of", "and",
)


def naive_scan(model: SystemModel, snapshot) -> list[tuple[str, str, str, str]]:
    """Brute-force keyword association: (element, category, keyword, id)."""
    documents = {
        identifier: normalize(entry.text)
        for identifier, entry in snapshot.entries.items()
    }
    records = []
    seen = set()
    for element, category, keyword in all_descriptors(model):
        phrase = normalize(keyword)
        if not phrase:
            continue
        width = len(phrase)
        for identifier in sorted(documents):
            tokens = documents[identifier]
            hit = any(
                tokens[i : i + width] == phrase
                for i in range(len(tokens) - width + 1)
            )
            if not hit:
                continue
            record = (element, category, keyword, identifier)
            if record not in seen:
                seen.add(record)
                records.append(record)
    return records


def bfs_simple_paths(model: SystemModel, source, target, max_len):
    """Every vertex-simple path of <= max_len edges, found breadth-first."""
    step = {asset: [] for asset in model.assets}
    for edge in model.edges:
        step[edge.source].append((edge.target, edge.id))
        if not model.edge_directed(edge):
            step[edge.target].append((edge.source, edge.id))
    found = []
    frontier = [(source,)]
    while frontier:
        next_frontier = []
        for path in frontier:
            if len(path) // 2 >= max_len:
                continue
            visited = set(path[::2])
            for neighbor, edge_id in step[path[-1]]:
                if neighbor in visited:
                    continue
                extended = path + (edge_id, neighbor)
                if neighbor == target:
                    found.append(extended)
                else:
                    next_frontier.append(extended)
        frontier = next_frontier
    return sorted(found)


def oracle_chain_paths(model, evidence_records, surface_assets, target, max_len):
    """Admissible chain paths: every vertex and edge on the path has evidence."""
    covered = {record[0] for record in evidence_records}
    paths = []
    for source in surface_assets:
        if source == target:
            if source in covered:
                paths.append((source,))
            continue
        for path in bfs_simple_paths(model, source, target, max_len):
            if all(ref in covered for ref in path):
                paths.append(path)
    return sorted(paths)


def random_phrase(rng: random.Random) -> str:
    return " ".join(rng.choices(VOCABULARY, k=rng.randint(1, 2)))


def random_corpus(rng: random.Random, max_entries: int = 200):
    count = rng.randint(1, max_entries)
    entries = []
    for i in range(count):
        database = rng.choice(("CAPEC", "CWE", "CVE"))
        if database == "CVE":
            identifier = f"CVE-2020-{10000 + i}"
        else:
            identifier = f"{database}-{9000 + i}"
        text = " ".join(rng.choices(VOCABULARY, k=rng.randint(3, 30)))
        entries.append(
            AttackVectorEntry(
                database=database,
                identifier=identifier,
                name="" if database == "CVE" else f"Entry {i}",
                description=text,
            )
        )
    return build_snapshot(entries, {"FIXTURE": f"seeded-{rng.random():.6f}"})


def random_descriptors(rng: random.Random, budget: int) -> tuple[DescriptorSet, int]:
    """A descriptor set using at most ``budget`` keywords; returns spent count."""
    mapping = {}
    spent = 0
    for category in CATEGORIES:
        if spent >= budget or rng.random() < 0.55:
            continue
        keywords = [random_phrase(rng) for _ in range(rng.randint(1, 2))]
        keywords = keywords[: budget - spent]
        spent += len(keywords)
        mapping[category] = keywords
    return DescriptorSet.from_mapping(mapping), spent


def random_model(rng: random.Random, max_assets: int = 8, max_elements: int = 20):
    asset_count = rng.randint(2, max_assets)
    edge_budget = max_elements - asset_count
    edge_count = rng.randint(1, max(1, min(edge_budget, 2 * asset_count)))
    assets = {}
    keyword_budget = 40
    for i in range(asset_count):
        descriptors, spent = random_descriptors(rng, keyword_budget)
        keyword_budget -= spent
        asset_id = f"a{i}"
        assets[asset_id] = Asset(id=asset_id, label=f"Asset {i}", descriptors=descriptors)
    ids = sorted(assets)
    edges = []
    for j in range(edge_count):
        source, target = rng.sample(ids, 2)
        descriptors, spent = random_descriptors(rng, keyword_budget)
        keyword_budget -= spent
        edges.append(
            DependencyEdge(
                id=f"e{j}",
                source=source,
                target=target,
                directed=rng.choice((None, None, True, False)),
                descriptors=descriptors,
            )
        )
    model = SystemModel(assets=assets, edges=edges, directed=rng.random() < 0.2)
    model.validate()
    return model
