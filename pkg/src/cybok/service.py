"""HTTP service exposing analysis sessions over ``/api/v1``.

A session wraps one system model.  Clients edit descriptors, re-run the
analysis, and read the attack surface or exploit chains; the corpus
snapshot and search index are shared, immutable service state.  Results
are cached per session revision so that repeating a request without an
intervening edit returns byte-identical output.
"""

import logging
import secrets
import threading

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel

from cybok import data
from cybok.analysis import (
    DEFAULT_MAX_LEN,
    associate,
    attack_surface,
    exploit_chains,
    rollup,
)
from cybok.corpus import CorpusSnapshot, build_snapshot, parse_source
from cybok.errors import CybokError, StaleIndexError, ValidationError
from cybok.index import SearchIndex, build_index
from cybok.model import CATEGORIES, SystemModel, load_graphml, save_graphml
from cybok.report import build_report, chains_to_dict, dump_report, surface_to_dicts

logger = logging.getLogger(__name__)

API_PREFIX = "/api/v1"


class CreateSessionPayload(BaseModel):
    graphml: str | None = None


class KeywordsPayload(BaseModel):
    keywords: list[str]


class Session:
    """One model under exploration, with serialized mutations."""

    def __init__(self, session_id: str, model: SystemModel):
        self.id = session_id
        self.model = model
        self.revision = 0
        self.lock = threading.Lock()
        self._cache: dict[tuple, bytes] = {}

    def cache_get(self, key: tuple) -> bytes | None:
        return self._cache.get((self.revision,) + key)

    def cache_put(self, key: tuple, payload: bytes) -> None:
        self._cache[(self.revision,) + key] = payload

    def bump(self) -> None:
        self.revision += 1
        # Results for superseded revisions are never served again.
        self._cache.clear()


def bundled_snapshot() -> CorpusSnapshot:
    """Snapshot built from the data files shipped with the package."""
    entries = []
    versions = {}
    for name in data.SOURCE_FILES:
        parsed, database, version = parse_source(data.read_bytes(name))
        entries.extend(parsed)
        versions[database] = version
    return build_snapshot(entries, versions)


def model_to_doc(model: SystemModel, revision: int) -> dict:
    assets = [
        {
            "id": asset.id,
            "label": asset.label,
            "descriptors": asset.descriptors.as_mapping(),
        }
        for asset in sorted(model.assets.values(), key=lambda a: a.id)
    ]
    edges = [
        {
            "id": edge.id,
            "source": edge.source,
            "target": edge.target,
            "directed": model.edge_directed(edge),
            "descriptors": edge.descriptors.as_mapping(),
        }
        for edge in model.edges
    ]
    return {
        "revision": revision,
        "directed_default": model.directed,
        "assets": assets,
        "edges": edges,
    }


def create_app(
    snapshot: CorpusSnapshot | None = None,
    index: SearchIndex | None = None,
    default_model: bytes | None = None,
    static_dir=None,
) -> FastAPI:
    """Build the service around one snapshot/index pair."""
    if snapshot is None:
        snapshot = bundled_snapshot()
    if index is None:
        index = build_index(snapshot)
    if index.corpus_ref != snapshot.snapshot_id:
        raise StaleIndexError(
            f"index was built from {index.corpus_ref}, not from snapshot "
            f"{snapshot.snapshot_id}; rebuild it with `cybok index`"
        )
    if default_model is None:
        default_model = data.read_bytes(data.MODEL_FILE)

    app = FastAPI(title="cybok", version="1")
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def _session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    def _json_response(session: Session, payload: bytes) -> Response:
        return Response(
            content=payload,
            media_type="application/json",
            headers={"X-Cybok-Revision": str(session.revision)},
        )

    @app.post(API_PREFIX + "/sessions", status_code=201)
    def create_session(payload: CreateSessionPayload | None = None):
        raw = default_model
        if payload is not None and payload.graphml is not None:
            raw = payload.graphml.encode("utf-8")
        try:
            model = load_graphml(raw)
        except CybokError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        session = Session("s-" + secrets.token_hex(8), model)
        with registry_lock:
            sessions[session.id] = session
        logger.info("created session %s (%d assets)", session.id, len(model.assets))
        return {
            "session_id": session.id,
            "revision": session.revision,
            "corpus_ref": snapshot.snapshot_id,
            "model": model_to_doc(model, session.revision),
        }

    @app.get(API_PREFIX + "/sessions/{session_id}/model")
    def get_model(session_id: str):
        session = _session(session_id)
        with session.lock:
            return model_to_doc(session.model, session.revision)

    @app.put(API_PREFIX + "/sessions/{session_id}/elements/{ref}/descriptors/{category}")
    def put_descriptors(session_id: str, ref: str, category: str, payload: KeywordsPayload):
        session = _session(session_id)
        if category not in CATEGORIES:
            raise HTTPException(status_code=404, detail=f"unknown descriptor category {category!r}")
        with session.lock:
            found = session.model.element(ref)
            if found is None:
                raise HTTPException(status_code=404, detail=f"unknown element {ref!r}")
            _, element = found
            element.descriptors = element.descriptors.with_category(category, payload.keywords)
            # Every accepted write advances the revision, including no-ops:
            # callers can use it as an optimistic-concurrency token.
            session.bump()
            return {
                "revision": session.revision,
                "element": ref,
                "category": category,
                "keywords": list(element.descriptors.category(category)),
            }

    @app.post(API_PREFIX + "/sessions/{session_id}/analyze")
    def analyze(session_id: str):
        session = _session(session_id)
        with session.lock:
            key = ("report",)
            payload = session.cache_get(key)
            if payload is None:
                report = build_report(session.model, snapshot, index)
                payload = dump_report(report).encode("utf-8")
                session.cache_put(key, payload)
            return _json_response(session, payload)

    @app.get(API_PREFIX + "/sessions/{session_id}/surface")
    def get_surface(session_id: str):
        session = _session(session_id)
        with session.lock:
            key = ("surface",)
            payload = session.cache_get(key)
            if payload is None:
                evidence = associate(session.model, index)
                surface = attack_surface(session.model, evidence)
                doc = {
                    "corpus_ref": snapshot.snapshot_id,
                    "surface": surface_to_dicts(session.model, surface),
                }
                payload = dump_report(doc).encode("utf-8")
                session.cache_put(key, payload)
            return _json_response(session, payload)

    @app.get(API_PREFIX + "/sessions/{session_id}/chains")
    def get_chains(session_id: str, target: str, max_len: int = DEFAULT_MAX_LEN):
        session = _session(session_id)
        with session.lock:
            key = ("chains", target, max_len)
            payload = session.cache_get(key)
            if payload is None:
                evidence = associate(session.model, index)
                surface = attack_surface(session.model, evidence)
                try:
                    result = exploit_chains(session.model, evidence, surface, target, max_len)
                except ValidationError as exc:
                    raise HTTPException(status_code=404, detail=str(exc))
                doc = chains_to_dict(session.model, result, rollup(evidence, snapshot))
                doc["corpus_ref"] = snapshot.snapshot_id
                payload = dump_report(doc).encode("utf-8")
                session.cache_put(key, payload)
            return _json_response(session, payload)

    @app.get(API_PREFIX + "/sessions/{session_id}/export")
    def export(session_id: str):
        """The session's current model as GraphML, edits included."""
        session = _session(session_id)
        with session.lock:
            payload = save_graphml(session.model)
            return Response(
                content=payload,
                media_type="application/xml",
                headers={"X-Cybok-Revision": str(session.revision)},
            )

    @app.get(API_PREFIX + "/corpus/entries/{entry_id}")
    def corpus_entry(entry_id: str):
        entry = snapshot.lookup(entry_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown entry {entry_id!r}")
        return entry.to_dict()

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="webui")

    return app
