"""Workspaces, the virtual fragment cutter, manual annotations and export.

A workspace is a named project set of saved interviews and cut fragments.
Annotations are global to the collection (they enrich the index for
everyone), not private to a workspace; the export manifest gathers the
annotations of the interviews a workspace references.

Persistence is a data directory holding workspaces.json (full store,
rewritten atomically on every mutation) and annotations.jsonl (append-only
log, replayed into the index at startup).
"""

from __future__ import annotations

import json
import os
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Sequence

from .corpus import Corpus, Interview
from .errors import (
    CorruptLog,
    EmptyAnnotation,
    EmptyName,
    InvalidRange,
    UnknownInterview,
    UnknownWorkspace,
)

WORKSPACES_FILE = "workspaces.json"
ANNOTATIONS_FILE = "annotations.jsonl"

Clock = Callable[[], str]
IdFactory = Callable[[], str]


def utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%f")[:-3] + "Z"


def new_id() -> str:
    return str(uuid.uuid4())


def format_timecode(ms: int) -> str:
    """Milliseconds to HH:MM:SS.mmm (61000 -> 00:01:01.000)."""
    seconds, millis = divmod(ms, 1000)
    minutes, seconds = divmod(seconds, 60)
    hours, minutes = divmod(minutes, 60)
    return f"{hours:02d}:{minutes:02d}:{seconds:02d}.{millis:03d}"


@dataclass
class WorkspaceItem:
    interview_id: str
    added_at: str
    note: str = ""


@dataclass
class Fragment:
    fragment_id: str
    interview_id: str
    start_ms: int
    end_ms: int
    label: str = ""
    note: str = ""


@dataclass(frozen=True)
class ManualAnnotation:
    annotation_id: str
    interview_id: str
    start_ms: int | None
    end_ms: int | None
    text: str
    tags: tuple[str, ...]
    created_at: str


@dataclass
class Workspace:
    id: str
    name: str
    created_at: str
    updated_at: str
    items: list[WorkspaceItem] = field(default_factory=list)
    fragments: list[Fragment] = field(default_factory=list)


def _check_range(start_ms: object, end_ms: object, interview: Interview) -> None:
    if (
        not isinstance(start_ms, int)
        or not isinstance(end_ms, int)
        or isinstance(start_ms, bool)
        or isinstance(end_ms, bool)
        or start_ms < 0
        or start_ms >= end_ms
        or end_ms > interview.duration_ms
    ):
        raise InvalidRange(start_ms, end_ms, interview.duration_ms)


def make_annotation(
    corpus: Corpus,
    interview_id: str,
    text: str,
    tags: Sequence[str],
    start_ms: int | None = None,
    end_ms: int | None = None,
    clock: Clock = utc_now,
    id_factory: IdFactory = new_id,
) -> ManualAnnotation:
    """Validate and construct an annotation (not yet persisted or applied)."""
    interview = corpus.get(interview_id)
    if interview is None:
        raise UnknownInterview(interview_id)
    tag_tuple = tuple(t for t in tags if t)
    if not text.strip() and not tag_tuple:
        raise EmptyAnnotation()
    if (start_ms is None) != (end_ms is None):
        raise InvalidRange(start_ms, end_ms, interview.duration_ms)
    if start_ms is not None and end_ms is not None:
        _check_range(start_ms, end_ms, interview)
    return ManualAnnotation(
        annotation_id=id_factory(),
        interview_id=interview_id,
        start_ms=start_ms,
        end_ms=end_ms,
        text=text,
        tags=tag_tuple,
        created_at=clock(),
    )


def annotation_to_doc(annotation: ManualAnnotation) -> dict:
    return {
        "annotation_id": annotation.annotation_id,
        "interview_id": annotation.interview_id,
        "start_ms": annotation.start_ms,
        "end_ms": annotation.end_ms,
        "text": annotation.text,
        "tags": list(annotation.tags),
        "created_at": annotation.created_at,
    }


def annotation_from_doc(doc: dict) -> ManualAnnotation:
    return ManualAnnotation(
        annotation_id=doc["annotation_id"],
        interview_id=doc["interview_id"],
        start_ms=doc.get("start_ms"),
        end_ms=doc.get("end_ms"),
        text=doc.get("text", ""),
        tags=tuple(doc.get("tags", [])),
        created_at=doc.get("created_at", ""),
    )


class AnnotationLog:
    """Append-only JSONL log; the one durable record of enrichment."""

    def __init__(self, path: Path):
        self.path = path

    def append(self, annotation: ManualAnnotation) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(annotation_to_doc(annotation), ensure_ascii=False)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")
            handle.flush()

    def replay(self) -> list[ManualAnnotation]:
        """All annotations in append order; a corrupt line aborts with its number."""
        if not self.path.exists():
            return []
        annotations = []
        with self.path.open("r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    doc = json.loads(line)
                    annotations.append(annotation_from_doc(doc))
                except (ValueError, KeyError, TypeError) as exc:
                    raise CorruptLog(self.path, number, str(exc)) from exc
        return annotations


class WorkspaceStore:
    """Single-writer store for workspaces; rewrites workspaces.json per mutation."""

    def __init__(
        self,
        data_dir: Path | str,
        corpus: Corpus,
        clock: Clock = utc_now,
        id_factory: IdFactory = new_id,
    ):
        self.data_dir = Path(data_dir)
        self.corpus = corpus
        self._clock = clock
        self._id_factory = id_factory
        self._workspaces: dict[str, Workspace] = {}
        self._load()

    # -- persistence --------------------------------------------------------

    @property
    def _path(self) -> Path:
        return self.data_dir / WORKSPACES_FILE

    def _load(self) -> None:
        if not self._path.exists():
            return
        raw = json.loads(self._path.read_text(encoding="utf-8"))
        for doc in raw:
            ws = Workspace(
                id=doc["id"],
                name=doc["name"],
                created_at=doc["created_at"],
                updated_at=doc.get("updated_at", doc["created_at"]),
                items=[
                    WorkspaceItem(
                        interview_id=item["interview_id"],
                        added_at=item["added_at"],
                        note=item.get("note", ""),
                    )
                    for item in doc.get("items", [])
                ],
                fragments=[
                    Fragment(
                        fragment_id=frag["fragment_id"],
                        interview_id=frag["interview_id"],
                        start_ms=frag["start_ms"],
                        end_ms=frag["end_ms"],
                        label=frag.get("label", ""),
                        note=frag.get("note", ""),
                    )
                    for frag in doc.get("fragments", [])
                ],
            )
            self._workspaces[ws.id] = ws

    def _save(self) -> None:
        self.data_dir.mkdir(parents=True, exist_ok=True)
        payload = [workspace_to_doc(ws) for ws in self._workspaces.values()]
        tmp = self._path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
        os.replace(tmp, self._path)

    # -- operations ----------------------------------------------------------

    def create_workspace(self, name: str) -> Workspace:
        if not name.strip():
            raise EmptyName()
        now = self._clock()
        ws = Workspace(id=self._id_factory(), name=name.strip(), created_at=now, updated_at=now)
        self._workspaces[ws.id] = ws
        self._save()
        return ws

    def get_workspace(self, workspace_id: str) -> Workspace:
        ws = self._workspaces.get(workspace_id)
        if ws is None:
            raise UnknownWorkspace(workspace_id)
        return ws

    def list_workspaces(self) -> list[Workspace]:
        return sorted(self._workspaces.values(), key=lambda ws: (ws.created_at, ws.id))

    def add_item(self, workspace_id: str, interview_id: str, note: str = "") -> WorkspaceItem:
        """Idempotent on interview_id: a second add updates the note."""
        ws = self.get_workspace(workspace_id)
        if self.corpus.get(interview_id) is None:
            raise UnknownInterview(interview_id)
        for item in ws.items:
            if item.interview_id == interview_id:
                item.note = note
                ws.updated_at = self._clock()
                self._save()
                return item
        item = WorkspaceItem(interview_id=interview_id, added_at=self._clock(), note=note)
        ws.items.append(item)
        ws.updated_at = item.added_at
        self._save()
        return item

    def cut_fragment(
        self,
        workspace_id: str,
        interview_id: str,
        start_ms: int,
        end_ms: int,
        label: str = "",
        note: str = "",
    ) -> Fragment:
        """Time-codes only; no media bytes are touched. Overlaps are allowed."""
        ws = self.get_workspace(workspace_id)
        interview = self.corpus.get(interview_id)
        if interview is None:
            raise UnknownInterview(interview_id)
        _check_range(start_ms, end_ms, interview)
        fragment = Fragment(
            fragment_id=self._id_factory(),
            interview_id=interview_id,
            start_ms=start_ms,
            end_ms=end_ms,
            label=label,
            note=note,
        )
        ws.fragments.append(fragment)
        ws.updated_at = self._clock()
        self._save()
        return fragment

    def export_workspace(self, workspace_id: str, annotations: Sequence[ManualAnnotation] = ()) -> dict:
        """Citation-ready manifest; a pure function of store + corpus state."""
        ws = self.get_workspace(workspace_id)
        items = []
        for item in ws.items:
            interview = self.corpus.get(item.interview_id)
            items.append(
                {
                    "interview_id": item.interview_id,
                    "title": interview.title if interview else "",
                    "collection": interview.collection_id if interview else "",
                    "media_url": interview.media_url if interview else None,
                    "note": item.note,
                    "added_at": item.added_at,
                }
            )
        fragments = []
        for frag in ws.fragments:
            interview = self.corpus.get(frag.interview_id)
            title = interview.title if interview else ""
            collection = interview.collection_id if interview else ""
            timecodes = f"{format_timecode(frag.start_ms)}–{format_timecode(frag.end_ms)}"
            fragments.append(
                {
                    "fragment_id": frag.fragment_id,
                    "interview_id": frag.interview_id,
                    "title": title,
                    "collection": collection,
                    "media_url": interview.media_url if interview else None,
                    "start_ms": frag.start_ms,
                    "end_ms": frag.end_ms,
                    "label": frag.label,
                    "note": frag.note,
                    "citation": f"{title}, {collection}, {timecodes}",
                }
            )
        referenced = {item.interview_id for item in ws.items} | {f.interview_id for f in ws.fragments}
        return {
            "workspace": {"id": ws.id, "name": ws.name, "created_at": ws.created_at},
            "exported_at": ws.updated_at,
            "items": items,
            "fragments": fragments,
            "annotations": [
                annotation_to_doc(a) for a in annotations if a.interview_id in referenced
            ],
        }


def workspace_to_doc(ws: Workspace) -> dict:
    return {
        "id": ws.id,
        "name": ws.name,
        "created_at": ws.created_at,
        "updated_at": ws.updated_at,
        "items": [
            {"interview_id": i.interview_id, "added_at": i.added_at, "note": i.note}
            for i in ws.items
        ],
        "fragments": [
            {
                "fragment_id": f.fragment_id,
                "interview_id": f.interview_id,
                "start_ms": f.start_ms,
                "end_ms": f.end_ms,
                "label": f.label,
                "note": f.note,
            }
            for f in ws.fragments
        ],
    }
