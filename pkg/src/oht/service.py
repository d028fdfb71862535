"""HTTP API and startup orchestration.

Startup rebuilds state from source: load corpus, build the index, replay
the annotation log in order. The current Index is published through a
single attribute, so readers always see a fully built epoch; the writer
path (annotations, workspace mutations) is serialized by one lock.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from fastapi import FastAPI, Query as QueryParam, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .corpus import Corpus, Interview, interview_to_doc, load_corpus
from .errors import NotFoundError, OhtError, UnknownInterview
from .index import Index, apply_annotation, build_index
from .search import (
    FacetCounts,
    InterviewHit,
    Query,
    SearchResult,
    compute_facet_counts,
    execute_search,
    known_facet_names,
    parse_query,
)
from .wordcloud import WordCloud, build_word_cloud
from .workspace import (
    ANNOTATIONS_FILE,
    AnnotationLog,
    Clock,
    IdFactory,
    ManualAnnotation,
    Workspace,
    WorkspaceStore,
    annotation_to_doc,
    make_annotation,
    new_id,
    utc_now,
    workspace_to_doc,
)


@dataclass
class ServiceConfig:
    corpus_dir: Path
    schema_path: Path
    data_dir: Path
    port: int = 8000
    default_page_size: int = 10
    default_cloud_k: int = 50
    static_dir: Path | None = None


class SearchService:
    """Application state: corpus, live index epoch, workspace store.

    Construction *is* startup and is idempotent given identical inputs;
    a corrupt annotation log line aborts with its line number.
    """

    def __init__(self, config: ServiceConfig, clock: Clock = utc_now, id_factory: IdFactory = new_id):
        self.config = config
        self.corpus: Corpus = load_corpus(config.corpus_dir, config.schema_path)
        index = build_index(self.corpus)
        self.log = AnnotationLog(Path(config.data_dir) / ANNOTATIONS_FILE)
        self._annotations: list[ManualAnnotation] = self.log.replay()
        for annotation in self._annotations:
            index = apply_annotation(index, annotation)
        self._index = index
        self.store = WorkspaceStore(config.data_dir, self.corpus, clock=clock, id_factory=id_factory)
        self._clock = clock
        self._id_factory = id_factory
        self._write_lock = threading.Lock()

    # Reading the attribute once gives a consistent snapshot; assignment in
    # add_annotation is the atomic epoch publication.
    @property
    def index(self) -> Index:
        return self._index

    @property
    def epoch(self) -> int:
        return self._index.epoch

    @property
    def annotations(self) -> tuple[ManualAnnotation, ...]:
        return tuple(self._annotations)

    # -- read path ------------------------------------------------------------

    def parse(self, index: Index, q: str, filters: Sequence[str]) -> Query:
        return parse_query(q, filters, index.options, known_facet_names(index))

    def search(self, q: str = "", filters: Sequence[str] = (), page: int = 1, size: int | None = None) -> SearchResult:
        index = self._index
        return execute_search(index, self.parse(index, q, filters), page=page, page_size=size or self.config.default_page_size)

    def word_cloud(self, q: str = "", filters: Sequence[str] = (), k: int | None = None) -> tuple[WordCloud, int]:
        index = self._index
        cloud = build_word_cloud(index, self.parse(index, q, filters), k or self.config.default_cloud_k)
        return cloud, index.epoch

    def facet_overview(self) -> tuple[FacetCounts, int]:
        index = self._index
        counts = compute_facet_counts(index, Query(terms=(), filters={}))
        return counts, index.epoch

    def get_interview(self, interview_id: str) -> tuple[Interview, int]:
        index = self._index
        interview = index.interviews.get(interview_id)
        if interview is None:
            raise UnknownInterview(interview_id)
        return interview, index.epoch

    # -- write path (single writer) --------------------------------------------

    def add_annotation(
        self,
        interview_id: str,
        text: str = "",
        tags: Sequence[str] = (),
        start_ms: int | None = None,
        end_ms: int | None = None,
    ) -> tuple[ManualAnnotation, int]:
        """Persist to the log, then publish the enriched index atomically."""
        with self._write_lock:
            annotation = make_annotation(
                self.corpus,
                interview_id,
                text,
                tags,
                start_ms=start_ms,
                end_ms=end_ms,
                clock=self._clock,
                id_factory=self._id_factory,
            )
            new_index = apply_annotation(self._index, annotation)
            self.log.append(annotation)
            self._annotations.append(annotation)
            self._index = new_index
        return annotation, new_index.epoch

    def export_workspace(self, workspace_id: str) -> dict:
        return self.store.export_workspace(workspace_id, self.annotations)


# -- JSON serialization -------------------------------------------------------


def search_result_doc(result: SearchResult) -> dict:
    return {
        "total": result.total,
        "page": result.page,
        "page_size": result.page_size,
        "hits": [_hit_doc(h) for h in result.hits],
        "facet_counts": facet_counts_doc(result.facet_counts),
        "epoch": result.epoch,
    }


def _hit_doc(hit: InterviewHit) -> dict:
    return {
        "interview_id": hit.interview_id,
        "score": hit.score,
        "title": hit.title,
        "collection": hit.collection_id,
        "summary_excerpt": hit.summary_excerpt,
        "metadata_match": hit.metadata_match,
        "more_fragments": hit.more_fragments,
        "fragment_hits": [
            {
                "segment_id": f.segment_id,
                "start_ms": f.start_ms,
                "end_ms": f.end_ms,
                "match_spans": [list(span) for span in f.match_spans],
                "snippet": f.snippet,
                "snippet_spans": [list(span) for span in f.snippet_spans],
            }
            for f in hit.fragment_hits
        ],
    }


def facet_counts_doc(counts: FacetCounts) -> list[dict]:
    return [
        {
            "name": fc.name,
            "label": fc.label,
            "values": [{"value": vc.value, "count": vc.count} for vc in fc.values],
            "missing_count": fc.missing_count,
        }
        for fc in counts
    ]


def word_cloud_doc(cloud: WordCloud, epoch: int) -> dict:
    return {
        "terms": [{"term": t.term, "weight": t.weight, "raw": t.raw} for t in cloud.terms],
        "scope_total": cloud.scope_total,
        "epoch": epoch,
    }


def interview_detail_doc(interview: Interview, epoch: int) -> dict:
    doc = interview_to_doc(interview)
    for segment, raw in zip(interview.segments, doc["segments"]):
        raw["segment_id"] = segment.segment_id
    doc["epoch"] = epoch
    return doc


def workspace_doc(ws: Workspace, epoch: int) -> dict:
    doc = workspace_to_doc(ws)
    doc["epoch"] = epoch
    return doc


# -- HTTP layer ----------------------------------------------------------------


class WorkspaceBody(BaseModel):
    name: str


class ItemBody(BaseModel):
    interview_id: str
    note: str = ""


class FragmentBody(BaseModel):
    interview_id: str
    start_ms: int
    end_ms: int
    label: str = ""
    note: str = ""


class AnnotationBody(BaseModel):
    interview_id: str
    start_ms: int | None = None
    end_ms: int | None = None
    text: str = ""
    tags: list[str] = []


def create_app(service: SearchService) -> FastAPI:
    app = FastAPI(title="oht", docs_url=None, redoc_url=None)

    @app.exception_handler(OhtError)
    async def domain_error(request: Request, exc: OhtError) -> JSONResponse:
        status = 404 if isinstance(exc, NotFoundError) else 400
        return JSONResponse(status_code=status, content={"error": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def invalid_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/api/search")
    def api_search(
        q: str = "",
        f: list[str] = QueryParam(default=[]),
        page: int = 1,
        size: int | None = None,
    ) -> dict:
        return search_result_doc(service.search(q=q, filters=f, page=page, size=size))

    @app.get("/api/interviews/{interview_id}")
    def api_interview(interview_id: str) -> dict:
        interview, epoch = service.get_interview(interview_id)
        return interview_detail_doc(interview, epoch)

    @app.get("/api/facets")
    def api_facets() -> dict:
        counts, epoch = service.facet_overview()
        return {
            "schema": [
                {"name": d.name, "label": d.label, "display_order": d.display_order}
                for d in service.index.facet_schema
            ],
            "counts": facet_counts_doc(counts),
            "epoch": epoch,
        }

    @app.get("/api/wordcloud")
    def api_wordcloud(q: str = "", f: list[str] = QueryParam(default=[]), k: int | None = None) -> dict:
        cloud, epoch = service.word_cloud(q=q, filters=f, k=k)
        return word_cloud_doc(cloud, epoch)

    @app.post("/api/workspaces")
    def api_create_workspace(body: WorkspaceBody) -> dict:
        ws = service.store.create_workspace(body.name)
        return {"workspace": workspace_to_doc(ws), "epoch": service.epoch}

    @app.get("/api/workspaces")
    def api_list_workspaces() -> dict:
        return {
            "workspaces": [workspace_to_doc(ws) for ws in service.store.list_workspaces()],
            "epoch": service.epoch,
        }

    @app.get("/api/workspaces/{workspace_id}")
    def api_get_workspace(workspace_id: str) -> dict:
        return workspace_doc(service.store.get_workspace(workspace_id), service.epoch)

    @app.post("/api/workspaces/{workspace_id}/items")
    def api_add_item(workspace_id: str, body: ItemBody) -> dict:
        item = service.store.add_item(workspace_id, body.interview_id, body.note)
        return {
            "item": {"interview_id": item.interview_id, "added_at": item.added_at, "note": item.note},
            "epoch": service.epoch,
        }

    @app.post("/api/workspaces/{workspace_id}/fragments")
    def api_cut_fragment(workspace_id: str, body: FragmentBody) -> dict:
        fragment = service.store.cut_fragment(
            workspace_id, body.interview_id, body.start_ms, body.end_ms, body.label, body.note
        )
        return {
            "fragment": {
                "fragment_id": fragment.fragment_id,
                "interview_id": fragment.interview_id,
                "start_ms": fragment.start_ms,
                "end_ms": fragment.end_ms,
                "label": fragment.label,
                "note": fragment.note,
            },
            "epoch": service.epoch,
        }

    @app.post("/api/annotations")
    def api_add_annotation(body: AnnotationBody) -> dict:
        annotation, epoch = service.add_annotation(
            body.interview_id,
            text=body.text,
            tags=body.tags,
            start_ms=body.start_ms,
            end_ms=body.end_ms,
        )
        return {"annotation": annotation_to_doc(annotation), "epoch": epoch}

    @app.get("/api/workspaces/{workspace_id}/export")
    def api_export(workspace_id: str) -> dict:
        manifest = service.export_workspace(workspace_id)
        manifest["epoch"] = service.epoch
        return manifest

    static_dir = service.config.static_dir
    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
