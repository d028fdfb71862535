"""Interview corpus: document model, validation, loading and stats.

A corpus is a directory tree of one JSON document per interview plus a
separate facet schema file. Heterogeneous collections are merged by
dropping their files into the same tree; an interview may carry any
subset of the schema's facets.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .errors import (
    DuplicateId,
    MissingSchema,
    StructureError,
    UnreadableFile,
    ValidationError,
)

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_FILENAME_SAFE_RE = re.compile(r"[^\w.-]")


@dataclass(frozen=True)
class Segment:
    """One time-aligned transcript fragment. segment_id is the list position."""

    segment_id: int
    start_ms: int
    end_ms: int
    speaker: str | None
    text: str


@dataclass(frozen=True)
class Interview:
    id: str
    title: str
    collection_id: str
    speakers: tuple[str, ...]
    date: str | None  # ISO-8601 YYYY-MM-DD, stored verbatim
    duration_ms: int
    summary: str
    facets: dict[str, frozenset[str]]
    segments: tuple[Segment, ...]
    media_url: str | None


@dataclass(frozen=True)
class FacetDefinition:
    name: str
    label: str
    display_order: int


@dataclass(frozen=True)
class Corpus:
    interviews: tuple[Interview, ...]  # sorted by id
    facet_schema: tuple[FacetDefinition, ...]
    collections: frozenset[str]

    @cached_property
    def _by_id(self) -> dict[str, Interview]:
        return {iv.id: iv for iv in self.interviews}

    def get(self, interview_id: str) -> Interview | None:
        return self._by_id.get(interview_id)


@dataclass(frozen=True)
class CorpusStats:
    interviews: int
    total_duration_ms: int
    facets: dict[str, dict[str, int]]  # facet name -> value -> interview count
    collections: dict[str, int]  # collection id -> interview count


@dataclass(frozen=True)
class CorpusProblem:
    path: str
    reason: str


def load_schema(schema_path: Path | str) -> tuple[FacetDefinition, ...]:
    """Parse a facets.json file; list order defines display_order."""
    path = Path(schema_path)
    if not path.is_file():
        raise MissingSchema(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise MissingSchema(path, f"unreadable schema: {exc}") from exc
    facets = raw.get("facets") if isinstance(raw, dict) else None
    if not isinstance(facets, list):
        raise MissingSchema(path, 'schema must be {"facets": [...]}')
    defs = []
    seen = set()
    for order, entry in enumerate(facets):
        if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
            raise MissingSchema(path, f"facet entry {order} needs a string name")
        name = entry["name"]
        if name in seen:
            raise MissingSchema(path, f"duplicate facet name {name!r}")
        seen.add(name)
        defs.append(FacetDefinition(name=name, label=str(entry.get("label", name)), display_order=order))
    return tuple(defs)


def validate_interview(raw: object, facet_names: set[str] | None = None) -> Interview | list[str]:
    """Check one parsed document against every invariant.

    Returns the Interview on success, otherwise the complete list of
    violations. Unknown document fields are ignored. Raises StructureError
    when `raw` is not a JSON object at all.
    """
    if not isinstance(raw, dict):
        raise StructureError(f"interview document must be a JSON object, got {type(raw).__name__}")

    violations: list[str] = []

    def want_str(key: str, allow_empty: bool = True) -> str:
        value = raw.get(key, "")
        if not isinstance(value, str):
            violations.append(f"{key} must be a string")
            return ""
        if not allow_empty and not value:
            violations.append(f"{key} must be non-empty")
        return value

    interview_id = want_str("id", allow_empty=False)
    title = want_str("title")
    collection = want_str("collection")
    summary = want_str("summary")

    speakers_raw = raw.get("speakers", [])
    speakers: tuple[str, ...] = ()
    if isinstance(speakers_raw, list) and all(isinstance(s, str) for s in speakers_raw):
        speakers = tuple(speakers_raw)
    else:
        violations.append("speakers must be a list of strings")

    date = raw.get("date")
    if date is not None:
        if not isinstance(date, str) or not _DATE_RE.match(date):
            violations.append("date must be null or an ISO-8601 YYYY-MM-DD string")
            date = None

    duration_ms = raw.get("duration_ms", 0)
    if not isinstance(duration_ms, int) or isinstance(duration_ms, bool) or duration_ms < 0:
        violations.append("duration_ms must be a non-negative integer")
        duration_ms = 0

    media_url = raw.get("media_url")
    if media_url is not None and not isinstance(media_url, str):
        violations.append("media_url must be null or a string")
        media_url = None

    facets: dict[str, frozenset[str]] = {}
    facets_raw = raw.get("facets", {})
    if not isinstance(facets_raw, dict):
        violations.append("facets must be an object mapping facet name to a list of values")
    else:
        for name, values in facets_raw.items():
            if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
                violations.append(f"facet {name!r} values must be a list of strings")
                continue
            if facet_names is not None and name not in facet_names:
                violations.append(f"facet {name!r} is not in the facet schema")
                continue
            facets[name] = frozenset(values)

    segments: list[Segment] = []
    segments_raw = raw.get("segments", [])
    if not isinstance(segments_raw, list):
        violations.append("segments must be a list")
        segments_raw = []
    previous_start = None
    for position, seg in enumerate(segments_raw):
        if not isinstance(seg, dict):
            violations.append(f"segment {position} must be an object")
            continue
        start = seg.get("start_ms")
        end = seg.get("end_ms")
        speaker = seg.get("speaker")
        text = seg.get("text", "")
        ok = True
        for label, value in (("start_ms", start), ("end_ms", end)):
            if not isinstance(value, int) or isinstance(value, bool):
                violations.append(f"segment {position}: {label} must be an integer")
                ok = False
        if speaker is not None and not isinstance(speaker, str):
            violations.append(f"segment {position}: speaker must be null or a string")
            ok = False
        if not isinstance(text, str):
            violations.append(f"segment {position}: text must be a string")
            ok = False
        if not ok:
            continue
        if start < 0:
            violations.append(f"segment {position}: start_ms must be >= 0")
        if start >= end:
            violations.append(f"segment {position}: start_ms < end_ms required")
        if end > duration_ms:
            violations.append(f"segment {position}: segment exceeds duration ({end} > {duration_ms})")
        if previous_start is not None and start < previous_start:
            violations.append(f"segment {position}: segments must be ordered by start_ms")
        previous_start = start
        segments.append(Segment(segment_id=position, start_ms=start, end_ms=end, speaker=speaker, text=text))

    if violations:
        return violations
    return Interview(
        id=interview_id,
        title=title,
        collection_id=collection,
        speakers=speakers,
        date=date,
        duration_ms=duration_ms,
        summary=summary,
        facets=facets,
        segments=tuple(segments),
        media_url=media_url,
    )


def _interview_files(root: Path) -> list[Path]:
    return sorted(p for p in root.rglob("*.json") if p.is_file())


def load_corpus(root_path: Path | str, schema_path: Path | str) -> Corpus:
    """Load every interview document under root_path; strict and deterministic.

    Raises on the first problem (MissingSchema, UnreadableFile,
    ValidationError, DuplicateId). Use validate_corpus for a full report.
    """
    schema = load_schema(schema_path)
    root = Path(root_path)
    if not root.is_dir():
        raise UnreadableFile(root, "corpus root is not a directory")

    facet_names = {d.name for d in schema}
    by_id: dict[str, Interview] = {}
    for path in _interview_files(root):
        raw = _read_document(path)
        try:
            result = validate_interview(raw, facet_names)
        except StructureError as exc:
            raise ValidationError(path, [str(exc)]) from exc
        if isinstance(result, list):
            raise ValidationError(path, result)
        if result.id in by_id:
            raise DuplicateId(result.id)
        by_id[result.id] = result

    interviews = tuple(by_id[i] for i in sorted(by_id))
    return Corpus(
        interviews=interviews,
        facet_schema=schema,
        collections=frozenset(iv.collection_id for iv in interviews),
    )


def validate_corpus(root_path: Path | str, schema_path: Path | str) -> list[CorpusProblem]:
    """Collect every problem under root_path instead of stopping at the first."""
    schema = load_schema(schema_path)
    root = Path(root_path)
    if not root.is_dir():
        return [CorpusProblem(str(root), "corpus root is not a directory")]

    facet_names = {d.name for d in schema}
    problems: list[CorpusProblem] = []
    seen_ids: dict[str, Path] = {}
    for path in _interview_files(root):
        try:
            raw = _read_document(path)
        except UnreadableFile as exc:
            problems.append(CorpusProblem(str(path), exc.reason))
            continue
        try:
            result = validate_interview(raw, facet_names)
        except StructureError as exc:
            problems.append(CorpusProblem(str(path), str(exc)))
            continue
        if isinstance(result, list):
            problems.extend(CorpusProblem(str(path), reason) for reason in result)
            continue
        if result.id in seen_ids:
            problems.append(
                CorpusProblem(str(path), f"duplicate interview id {result.id!r} (also in {seen_ids[result.id]})")
            )
            continue
        seen_ids[result.id] = path
    return problems


def _read_document(path: Path) -> object:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UnreadableFile(path, str(exc)) from exc


def interview_to_doc(interview: Interview) -> dict:
    """Serialize back to the on-disk wire format (facet values sorted)."""
    return {
        "id": interview.id,
        "title": interview.title,
        "collection": interview.collection_id,
        "speakers": list(interview.speakers),
        "date": interview.date,
        "duration_ms": interview.duration_ms,
        "summary": interview.summary,
        "media_url": interview.media_url,
        "facets": {name: sorted(values) for name, values in sorted(interview.facets.items())},
        "segments": [
            {"start_ms": s.start_ms, "end_ms": s.end_ms, "speaker": s.speaker, "text": s.text}
            for s in interview.segments
        ],
    }


def write_corpus(corpus: Corpus, root_path: Path | str, schema_path: Path | str) -> None:
    """Write a corpus back to disk in the load_corpus format."""
    root = Path(root_path)
    root.mkdir(parents=True, exist_ok=True)
    schema_doc = {"facets": [{"name": d.name, "label": d.label} for d in corpus.facet_schema]}
    Path(schema_path).write_text(json.dumps(schema_doc, ensure_ascii=False, indent=2), encoding="utf-8")
    used: set[str] = set()
    for interview in corpus.interviews:
        stem = _FILENAME_SAFE_RE.sub("_", interview.id) or "interview"
        name = stem
        bump = 0
        while name in used:
            bump += 1
            name = f"{stem}_{bump}"
        used.add(name)
        doc = interview_to_doc(interview)
        (root / f"{name}.json").write_text(json.dumps(doc, ensure_ascii=False, indent=2), encoding="utf-8")


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Brute-force tallies over the corpus (collection overview numbers)."""
    facet_counts: dict[str, dict[str, int]] = {}
    collection_counts: dict[str, int] = {}
    total_duration = 0
    for interview in corpus.interviews:
        total_duration += interview.duration_ms
        collection_counts[interview.collection_id] = collection_counts.get(interview.collection_id, 0) + 1
        for name, values in interview.facets.items():
            per_value = facet_counts.setdefault(name, {})
            for value in values:
                per_value[value] = per_value.get(value, 0) + 1
    return CorpusStats(
        interviews=len(corpus.interviews),
        total_duration_ms=total_duration,
        facets={name: dict(sorted(values.items())) for name, values in sorted(facet_counts.items())},
        collections=dict(sorted(collection_counts.items())),
    )
