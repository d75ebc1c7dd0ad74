"""HTTP/JSON API and static export.

The API serves three read-only endpoints over immutable MapState snapshots;
export_static writes the same JSON documents to disk so the UI can run
without a server. Both paths share one serializer so the bytes agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from . import embedding
from .clustering import MAX_CLUSTERS
from .errors import EmptyQueryError, InvalidKError, ScholarMapError
from .ingest import Dataset, PublicationSet
from .mapstate import (
    MapParams,
    MapState,
    MapStateCache,
    default_params,
    query_map,
)
from .textproc import MAX_EMPHASIS

_PUBSET_VALUES = {p.value: p for p in PublicationSet}


@dataclass(frozen=True)
class ApiConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    dataset_path: str = ""
    export_dir: str | None = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} outside [1, 65535]")


class ParamError(ScholarMapError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def to_json_bytes(doc) -> bytes:
    """Canonical JSON byte encoding shared by the API and the static export."""
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def map_document(state: MapState) -> dict:
    points = [
        {
            "id": s.id,
            "name": s.name,
            "x": float(state.coords.points[i, 0]),
            "y": float(state.coords.points[i, 1]),
            "cluster": state.labels[i],
            "color": state.colors[i],
        }
        for i, s in enumerate(state.summaries)
    ]
    ellipses = [
        {
            "cx": e.center[0],
            "cy": e.center[1],
            "rx": e.half_axes[0],
            "ry": e.half_axes[1],
            "rotation": e.rotation,
            "color": color,
        }
        for color, e in enumerate(state.ellipses)
    ]
    return {
        "params": {
            "pubset": state.params.pub_set.value,
            "emphasis": state.params.emphasis,
            "k": state.params.k,
            "seed": state.params.seed,
        },
        "points": points,
        "ellipses": ellipses,
        "explained_variance": [float(v) for v in state.pca.explained_variance],
    }


def query_document(result: dict) -> dict:
    return {
        "matched_terms": result["matched_terms"],
        "dropped_terms": result["dropped_terms"],
        "top": [{"id": rid, "score": score} for rid, score in result["top"]],
        "scores": result["scores"],
    }


def researcher_document(summary) -> dict:
    return {
        "id": summary.id,
        "name": summary.name,
        "affiliation": summary.affiliation,
        "keywords": list(summary.keywords),
        "citation_count": summary.citation_count,
        "scholar_url": summary.scholar_url,
        "photo_url": summary.photo_url,
    }


def _json_response(doc, status: int = 200) -> Response:
    return Response(content=to_json_bytes(doc), status_code=status, media_type="application/json")


def _error(status: int, code: str, message: str = "") -> Response:
    return _json_response({"error": code, "message": message}, status)


def _parse_int(raw: str | None, default: int, code: str) -> int:
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParamError(code, f"not an integer: {raw!r}") from None


def parse_map_params(request: Request, defaults: MapParams, n_researchers: int) -> MapParams:
    q = request.query_params
    pubset_raw = q.get("pubset")
    if pubset_raw is None or pubset_raw == "":
        pub_set = defaults.pub_set
    elif pubset_raw in _PUBSET_VALUES:
        pub_set = _PUBSET_VALUES[pubset_raw]
    else:
        raise ParamError("invalid_pubset", f"pubset must be one of {sorted(_PUBSET_VALUES)}")
    emphasis = _parse_int(q.get("emphasis"), defaults.emphasis, "invalid_emphasis")
    if not 0 <= emphasis <= MAX_EMPHASIS:
        raise ParamError("invalid_emphasis", f"emphasis must be in [0, {MAX_EMPHASIS}]")
    k = _parse_int(q.get("k"), defaults.k, "invalid_k")
    if not 1 <= k <= min(MAX_CLUSTERS, n_researchers):
        raise ParamError("invalid_k", f"k must be in [1, {min(MAX_CLUSTERS, n_researchers)}]")
    seed = _parse_int(q.get("seed"), defaults.seed, "invalid_seed")
    return MapParams(pub_set=pub_set, emphasis=emphasis, k=k, seed=seed)


def create_app(dataset: Dataset, defaults: MapParams | None = None) -> FastAPI:
    defaults = defaults or default_params(dataset)
    cache = MapStateCache(dataset)
    n = len(dataset.researchers)

    app = FastAPI(title="scholarmap", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    app.state.cache = cache
    app.state.defaults = defaults

    @app.get("/api/map")
    def api_map(request: Request):
        try:
            params = parse_map_params(request, defaults, n)
            state = cache.get(params)
        except ParamError as exc:
            return _error(400, exc.code, str(exc))
        except InvalidKError as exc:
            return _error(400, "invalid_k", str(exc))
        return _json_response(map_document(state))

    @app.get("/api/query")
    def api_query(request: Request):
        q = request.query_params
        text = (q.get("q") or "").strip()
        if not text:
            return _error(400, "empty_query", "query text is required")
        try:
            params = parse_map_params(request, defaults, n)
            top = _parse_int(q.get("top"), embedding.DEFAULT_TOP_K, "invalid_top")
            if top < 1:
                raise ParamError("invalid_top", "top must be >= 1")
            state = cache.get(params)
            result = query_map(state, text, top)
        except ParamError as exc:
            return _error(400, exc.code, str(exc))
        except EmptyQueryError:
            return _error(400, "empty_query", "no query term matches the vocabulary")
        return _json_response(query_document(result))

    @app.get("/api/researcher/{researcher_id}")
    def api_researcher(researcher_id: str):
        state = cache.get(defaults)
        for summary in state.summaries:
            if summary.id == researcher_id:
                return _json_response(researcher_document(summary))
        return _error(404, "unknown_id", f"no researcher with id {researcher_id!r}")

    return app


def _query_slug(keyword: str) -> str:
    from .ingest import slugify

    return slugify(keyword)


def export_static(dataset: Dataset, params: MapParams | None = None, out_dir: str | Path = "export") -> list[Path]:
    """Write map.json, researchers.json, and a keyword query index matching
    the API schemas byte-for-byte. Returns the written paths."""
    from .mapstate import build_map_state

    params = params or default_params(dataset)
    out = Path(out_dir)
    written: list[Path] = []

    state = build_map_state(dataset, params)

    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "queries").mkdir(exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create export directory {out}: {exc}") from exc

    def _write(path: Path, doc) -> None:
        try:
            path.write_bytes(to_json_bytes(doc))
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        written.append(path)

    _write(out / "map.json", map_document(state))
    _write(out / "researchers.json", [researcher_document(s) for s in state.summaries])

    # one precomputed query per distinct researcher keyword, at default params
    keywords = sorted({kw for r in dataset.researchers for kw in r.keywords})
    index = []
    seen_slugs: set[str] = set()
    for kw in keywords:
        slug = _query_slug(kw)
        if not slug or slug in seen_slugs:
            continue
        seen_slugs.add(slug)
        try:
            result = query_map(state, kw)
        except EmptyQueryError:
            continue
        _write(out / "queries" / f"{slug}.json", query_document(result))
        index.append({"keyword": kw, "file": f"queries/{slug}.json"})
    _write(out / "queries" / "index.json", {"queries": index})
    return written
