"""Command line front end.

The subcommands mirror the analysis workflow: ``update`` acquires raw
database sources, ``snapshot`` freezes them into a content-addressed
store, ``index`` builds the search index beside the snapshot, and the
remaining commands evaluate GraphML system models against the store.
"""

import json
import logging
import sys
from pathlib import Path

import click

from cybok import __version__, data
from cybok.analysis import (
    DEFAULT_MAX_LEN,
    associate,
    attack_surface,
    exploit_chains,
    rollup,
)
from cybok.corpus import (
    DATABASES,
    CorpusConfig,
    build_snapshot,
    fetch_sources,
    load_snapshot,
    parse_source,
)
from cybok.errors import CybokError
from cybok.index import INDEX_FILENAME, build_index, load_index, save_index
from cybok.model import load_graphml
from cybok.report import (
    build_report,
    chains_to_dict,
    dump_report,
    emit_results_table,
    render_graph,
    spec_from_report,
    surface_to_dicts,
)

logger = logging.getLogger(__name__)

DEFAULT_STORE = "cybok-store"
DEFAULT_SOURCES = str(Path(DEFAULT_STORE) / "sources")

model_option = click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="GraphML system model.",
)
index_option = click.option(
    "--index",
    "index_dir",
    default=None,
    help="Directory holding the snapshot and its index (defaults to the bundled corpus).",
)
out_option = click.option("--out", "-o", default=None, help="Write to a file instead of stdout.")


def _read_model(path: str):
    return load_graphml(Path(path).read_bytes())


def _load_store(index_dir: str | None):
    """Return (snapshot, index) for a store directory, or the bundled corpus."""
    if index_dir is None:
        from cybok.service import bundled_snapshot

        snapshot = bundled_snapshot()
        return snapshot, build_index(snapshot)
    store = Path(index_dir)
    snapshot = load_snapshot(store)
    index_path = store / INDEX_FILENAME
    if index_path.exists():
        return snapshot, load_index(index_path, snapshot)
    logger.warning("no persisted index in %s; building one in memory", store)
    return snapshot, build_index(snapshot)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


@click.group()
@click.version_option(version=__version__, prog_name="cybok")
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Explore known attack vectors against a system design."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@main.command()
@click.option(
    "--offline-dir",
    type=click.Path(exists=True, file_okay=False),
    default=None,
    help="Read raw sources from a local directory instead of the network.",
)
@click.option("--bundled", is_flag=True, help="Use the sample sources shipped with the package.")
@click.option(
    "--db",
    "db_list",
    default=None,
    help="Comma-separated subset of capec,cwe,cve.",
)
@click.option(
    "--out",
    "out_dir",
    default=DEFAULT_SOURCES,
    show_default=True,
    help="Directory for the raw source files.",
)
def update(offline_dir, bundled, db_list, out_dir) -> None:
    """Acquire raw database sources."""
    if db_list:
        selected = tuple(name.strip().upper() for name in db_list.split(",") if name.strip())
    else:
        selected = DATABASES
    if bundled:
        offline_dir = str(data.directory())
    try:
        if offline_dir is not None:
            config = CorpusConfig.offline(Path(offline_dir), selected)
        else:
            config = CorpusConfig.default(selected)
        report = fetch_sources(config, Path(out_dir))
    except CybokError as exc:
        raise click.ClickException(str(exc))
    for source in report.sources:
        click.echo(
            f"{source.database}: {source.origin} -> {source.stored_path} ({source.size} bytes)"
        )


@main.command()
@click.option(
    "--sources",
    "sources_dir",
    default=DEFAULT_SOURCES,
    show_default=True,
    help="Directory with raw source files (from `cybok update`).",
)
@click.option(
    "--out",
    "out_dir",
    default=DEFAULT_STORE,
    show_default=True,
    help="Store directory for the snapshot.",
)
def snapshot(sources_dir, out_dir) -> None:
    """Parse raw sources and freeze them into a snapshot."""
    sources = Path(sources_dir)
    if not sources.is_dir():
        raise click.ClickException(f"no sources directory at {sources}; run `cybok update` first")
    paths = sorted(p for p in sources.iterdir() if p.is_file())
    if not paths:
        raise click.ClickException(f"no source files in {sources}")
    entries = []
    versions: dict[str, str] = {}
    try:
        for path in paths:
            parsed, database, version = parse_source(path.read_bytes())
            logger.info("parsed %d entries from %s", len(parsed), path.name)
            entries.extend(parsed)
            if database != "MIXED":
                versions[database] = version
        snap = build_snapshot(entries, versions, out_dir=Path(out_dir))
    except CybokError as exc:
        raise click.ClickException(str(exc))
    counts = {db: len(snap.by_database(db)) for db in DATABASES}
    click.echo(f"snapshot {snap.snapshot_id}")
    click.echo(f"entries: {json.dumps(counts)} ingested_at: {snap.ingested_at}")


@main.command()
@click.option(
    "--snapshot",
    "snapshot_dir",
    default=DEFAULT_STORE,
    show_default=True,
    help="Store directory holding the snapshot.",
)
@click.option(
    "--out",
    "out_dir",
    default=None,
    help="Where to write the index (defaults to the snapshot directory).",
)
def index(snapshot_dir, out_dir) -> None:
    """Build the search index for a snapshot."""
    try:
        snap = load_snapshot(Path(snapshot_dir))
        idx = build_index(snap)
        path = save_index(idx, Path(out_dir or snapshot_dir))
    except CybokError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"indexed {idx.doc_count} documents ({len(idx.postings)} terms) -> {path}")


@main.command()
@model_option
def validate(model_path) -> None:
    """Check a GraphML system model against the descriptor profile."""
    try:
        model = _read_model(model_path)
    except CybokError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"OK: {len(model.assets)} assets, {len(model.edges)} edges")


@main.command()
@model_option
@index_option
@click.option("--target", default=None, help="Also enumerate exploit chains to this asset.")
@click.option("--max-len", default=DEFAULT_MAX_LEN, show_default=True, help="Chain length bound.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "table"]),
    default="json",
    show_default=True,
    help="Report document or a per-element results table.",
)
@out_option
def analyze(model_path, index_dir, target, max_len, fmt, out) -> None:
    """Run the full analysis for a model and emit the report."""
    try:
        model = _read_model(model_path)
        snap, idx = _load_store(index_dir)
        if fmt == "table":
            evidence = associate(model, idx)
            roll = rollup(evidence, snap)
            text = emit_results_table(evidence, roll, snap, model)
        else:
            report = build_report(model, snap, idx, target, max_len)
            text = dump_report(report)
    except CybokError as exc:
        raise click.ClickException(str(exc))
    _emit(text, out)


@main.command()
@model_option
@index_option
@out_option
def surface(model_path, index_dir, out) -> None:
    """List the attack surface: assets whose entry points match the corpus."""
    try:
        model = _read_model(model_path)
        snap, idx = _load_store(index_dir)
        evidence = associate(model, idx)
        elements = attack_surface(model, evidence)
        doc = {
            "corpus_ref": snap.snapshot_id,
            "surface": surface_to_dicts(model, elements),
        }
    except CybokError as exc:
        raise click.ClickException(str(exc))
    _emit(dump_report(doc), out)


@main.command()
@model_option
@index_option
@click.option("--target", required=True, help="Target asset id.")
@click.option("--max-len", default=DEFAULT_MAX_LEN, show_default=True, help="Chain length bound.")
@out_option
def chains(model_path, index_dir, target, max_len, out) -> None:
    """Enumerate admissible exploit chains from the surface to TARGET."""
    try:
        model = _read_model(model_path)
        snap, idx = _load_store(index_dir)
        evidence = associate(model, idx)
        elements = attack_surface(model, evidence)
        result = exploit_chains(model, evidence, elements, target, max_len)
        doc = chains_to_dict(model, result, rollup(evidence, snap))
        doc["corpus_ref"] = snap.snapshot_id
    except CybokError as exc:
        raise click.ClickException(str(exc))
    _emit(dump_report(doc), out)


@main.command()
@model_option
@click.option(
    "--report",
    "report_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Report document from `cybok analyze` (needed for surface/chains).",
)
@click.option(
    "--kind",
    type=click.Choice(["topology", "surface", "chains"]),
    default="topology",
    show_default=True,
    help="What to highlight in the rendering.",
)
@out_option
def render(model_path, report_path, kind, out) -> None:
    """Render the model as a DOT graph, optionally with analysis markings."""
    try:
        model = _read_model(model_path)
        report = {}
        if report_path is not None:
            report = json.loads(Path(report_path).read_text(encoding="utf-8"))
        elif kind != "topology":
            raise click.ClickException(f"--kind {kind} requires --report")
        text = render_graph(model, spec_from_report(report, kind))
    except CybokError as exc:
        raise click.ClickException(str(exc))
    _emit(text, out)


@main.command()
@click.option(
    "--snapshot",
    "snapshot_dir",
    default=None,
    help="Store directory with the snapshot (defaults to the bundled corpus).",
)
@click.option(
    "--index",
    "index_dir",
    default=None,
    help="Directory holding the index (defaults to the snapshot directory).",
)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option(
    "--static",
    "static_dir",
    type=click.Path(exists=True, file_okay=False),
    default=None,
    help="Serve a built web UI from this directory.",
)
def serve(snapshot_dir, index_dir, host, port, static_dir) -> None:
    """Run the HTTP analysis service."""
    import uvicorn

    from cybok.service import create_app

    try:
        if snapshot_dir is None and index_dir is None:
            snap, idx = None, None
        else:
            store = snapshot_dir or index_dir
            snap = load_snapshot(Path(store))
            index_path = Path(index_dir or store) / INDEX_FILENAME
            idx = load_index(index_path, snap) if index_path.exists() else build_index(snap)
        app = create_app(snap, idx, static_dir=static_dir)
    except CybokError as exc:
        raise click.ClickException(str(exc))
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
