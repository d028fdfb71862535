"""Query parsing, ranked retrieval, facet counts, snippets.

All functions here are pure over an immutable Index and freely concurrent.
Filter semantics are multi-select: OR within one facet, AND across facets,
and a facet's own filter is excluded when counting that facet's values,
so a selected bar's siblings stay visible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadFilter, PageOutOfRange
from .index import (
    BM25_B,
    BM25_K1,
    Index,
    TokenizerOptions,
    term_idf,
    tokenize,
)

# Facet names that are always legal in filters and counts, on top of the
# schema: "tags" collects manual-annotation tags.
RESERVED_FACETS = ("tags",)
RESERVED_LABELS = {"tags": "Tags"}

DEFAULT_FRAGMENT_CAP = 20
DEFAULT_SNIPPET_WINDOW = 5

_WORD_RE = re.compile(r"\S+")
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

ELLIPSIS = "…"


@dataclass(frozen=True)
class Query:
    terms: tuple[str, ...]  # empty = match-all
    filters: dict[str, frozenset[str]]  # facet name -> selected values

    @property
    def is_match_all(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class FragmentHit:
    segment_id: int
    start_ms: int
    end_ms: int
    match_spans: tuple[tuple[int, int], ...]  # char spans into the full segment text
    snippet: str
    snippet_spans: tuple[tuple[int, int], ...]  # same matches, re-based to the snippet


@dataclass(frozen=True)
class InterviewHit:
    interview_id: str
    score: float
    title: str
    collection_id: str
    summary_excerpt: str  # first 200 chars; full summary via item detail
    fragment_hits: tuple[FragmentHit, ...]
    more_fragments: bool
    metadata_match: bool


@dataclass(frozen=True)
class FacetValueCount:
    value: str
    count: int


@dataclass(frozen=True)
class FacetCount:
    name: str
    label: str
    values: tuple[FacetValueCount, ...]  # sorted by count desc, value asc
    missing_count: int


FacetCounts = tuple[FacetCount, ...]


@dataclass(frozen=True)
class SearchResult:
    total: int
    page: int
    page_size: int
    hits: tuple[InterviewHit, ...]
    facet_counts: FacetCounts
    epoch: int


def known_facet_names(index: Index) -> set[str]:
    return {d.name for d in index.facet_schema} | set(RESERVED_FACETS)


def parse_query(
    text: str,
    filter_pairs: Sequence[str],
    options: TokenizerOptions,
    facet_names: Iterable[str],
) -> Query:
    """Tokenize query text and split "facet:value" pairs (first colon wins)."""
    known = set(facet_names)
    filters: dict[str, set[str]] = {}
    for pair in dict.fromkeys(filter_pairs):  # dedup, keep order
        facet, sep, value = pair.partition(":")
        if not sep:
            raise BadFilter(pair)
        if facet not in known:
            raise BadFilter(pair, f"unknown facet {facet!r}")
        filters.setdefault(facet, set()).add(value)
    return Query(
        terms=tuple(tokenize(text, options)),
        filters={name: frozenset(values) for name, values in filters.items()},
    )


def score_interview(index: Index, interview_id: str, terms: Sequence[str]) -> float:
    """BM25 over the interview's whole posting set (segments + metadata + annotations)."""
    score = 0.0
    for term in terms:
        tf = 0
        for posting in index.postings.get(term, ()):
            if posting.interview_id == interview_id:
                tf += posting.term_frequency
        score += _bm25_term(index, term, tf, interview_id)
    return score


def _bm25_term(index: Index, term: str, tf: int, interview_id: str) -> float:
    if tf == 0:
        return 0.0
    dl = index.doc_lengths.get(interview_id, 0)
    avgdl = index.avg_doc_length
    norm = BM25_K1 * (1.0 - BM25_B + BM25_B * (dl / avgdl)) if avgdl > 0 else BM25_K1 * (1.0 - BM25_B)
    return term_idf(index, term) * (tf * (BM25_K1 + 1.0)) / (tf + norm)


def _filter_scope(index: Index, filters: dict[str, frozenset[str]], skip_facet: str | None = None) -> set[str] | None:
    """AND of per-facet OR-unions; None means unconstrained."""
    scope: set[str] | None = None
    for facet, values in filters.items():
        if facet == skip_facet:
            continue
        matched: set[str] = set()
        for value in values:
            matched |= index.facet_index.get((facet, value), frozenset())
        scope = matched if scope is None else scope & matched
    return scope


def _term_scope(index: Index, terms: Sequence[str]) -> set[str]:
    """Interviews containing at least one query term (any annotation layer)."""
    matched: set[str] = set()
    for term in set(terms):
        matched.update(p.interview_id for p in index.postings.get(term, ()))
    return matched


def query_scope(index: Index, query: Query) -> set[str]:
    """The interviews a query reaches: term match (or all) AND all filters."""
    scope = set(index.interviews) if query.is_match_all else _term_scope(index, query.terms)
    filtered = _filter_scope(index, query.filters)
    if filtered is not None:
        scope &= filtered
    return scope


def execute_search(
    index: Index,
    query: Query,
    page: int = 1,
    page_size: int = 10,
    fragment_cap: int = DEFAULT_FRAGMENT_CAP,
    snippet_window: int = DEFAULT_SNIPPET_WINDOW,
) -> SearchResult:
    if page < 1:
        raise ValueError("page must be >= 1")
    if not 1 <= page_size <= 100:
        raise ValueError("page_size must be between 1 and 100")

    scope = query_scope(index, query)
    total = len(scope)
    offset = (page - 1) * page_size
    if page > 1 and offset >= total:
        raise PageOutOfRange(page, total)

    if query.is_match_all:
        ranked = [(0.0, iid) for iid in sorted(scope)]
    else:
        # Per-term tf maps: one pass over each posting list, then the same
        # arithmetic as score_interview, id by id.
        tf_maps: list[tuple[str, dict[str, int]]] = []
        for term in query.terms:
            tf_map: dict[str, int] = {}
            for posting in index.postings.get(term, ()):
                tf_map[posting.interview_id] = tf_map.get(posting.interview_id, 0) + posting.term_frequency
            tf_maps.append((term, tf_map))
        scored = []
        for iid in scope:
            score = 0.0
            for term, tf_map in tf_maps:
                score += _bm25_term(index, term, tf_map.get(iid, 0), iid)
            scored.append((score, iid))
        ranked = sorted(scored, key=lambda pair: (-pair[0], pair[1]))

    page_ids = ranked[offset : offset + page_size]
    hits = tuple(
        _build_hit(index, iid, score, query.terms, fragment_cap, snippet_window)
        for score, iid in page_ids
    )
    return SearchResult(
        total=total,
        page=page,
        page_size=page_size,
        hits=hits,
        facet_counts=compute_facet_counts(index, query),
        epoch=index.epoch,
    )


def _build_hit(
    index: Index,
    interview_id: str,
    score: float,
    terms: Sequence[str],
    fragment_cap: int,
    snippet_window: int,
) -> InterviewHit:
    interview = index.interviews[interview_id]
    term_set = set(terms)
    matched_segments: set[int] = set()
    metadata_match = False
    for term in term_set:
        for posting in index.postings.get(term, ()):
            if posting.interview_id != interview_id:
                continue
            if posting.segment_id >= 0:
                matched_segments.add(posting.segment_id)
            else:
                metadata_match = True

    ordered = sorted(matched_segments)
    more = len(ordered) > fragment_cap
    fragments = []
    for segment_id in ordered[:fragment_cap]:
        segment = interview.segments[segment_id]
        spans = find_match_spans(segment.text, term_set)
        snippet, snippet_spans = make_snippet(segment.text, spans, snippet_window)
        fragments.append(
            FragmentHit(
                segment_id=segment_id,
                start_ms=segment.start_ms,
                end_ms=segment.end_ms,
                match_spans=tuple(spans),
                snippet=snippet,
                snippet_spans=tuple(snippet_spans),
            )
        )
    return InterviewHit(
        interview_id=interview_id,
        score=score,
        title=interview.title,
        collection_id=interview.collection_id,
        summary_excerpt=interview.summary[:200],
        fragment_hits=tuple(fragments),
        more_fragments=more,
        metadata_match=metadata_match,
    )


def compute_facet_counts(index: Index, query: Query) -> FacetCounts:
    """Counts per facet over the query scope minus that facet's own filter."""
    base_terms = set(index.interviews) if query.is_match_all else _term_scope(index, query.terms)

    values_by_facet: dict[str, list[str]] = {}
    for facet, value in index.facet_index:
        values_by_facet.setdefault(facet, []).append(value)

    counts: list[FacetCount] = []
    names = [d.name for d in index.facet_schema]
    labels = {d.name: d.label for d in index.facet_schema}
    for reserved in RESERVED_FACETS:
        if reserved not in names:
            names.append(reserved)
            labels[reserved] = RESERVED_LABELS[reserved]

    for facet in names:
        filtered = _filter_scope(index, query.filters, skip_facet=facet)
        scope = base_terms if filtered is None else base_terms & filtered
        value_counts = [
            FacetValueCount(value=value, count=len(scope & index.facet_index[(facet, value)]))
            for value in values_by_facet.get(facet, [])
        ]
        value_counts.sort(key=lambda vc: (-vc.count, vc.value))
        covered: set[str] = set()
        for value in values_by_facet.get(facet, []):
            covered |= index.facet_index[(facet, value)]
        missing = len(scope) - len(scope & covered)
        counts.append(
            FacetCount(
                name=facet,
                label=labels[facet],
                values=tuple(value_counts),
                missing_count=missing,
            )
        )
    return tuple(counts)


def find_match_spans(text: str, terms: set[str]) -> list[tuple[int, int]]:
    """Char spans of tokens whose lowercase form is a query term.

    Non-overlapping and ascending by construction (left-to-right scan).
    """
    spans = []
    for match in _TOKEN_RE.finditer(text):
        if match.group().lower() in terms:
            spans.append(match.span())
    return spans


def make_snippet(
    segment_text: str,
    match_spans: Sequence[tuple[int, int]],
    window: int,
) -> tuple[str, list[tuple[int, int]]]:
    """Excerpt around the first match span, `window` words on each side.

    The excerpt is a substring of the original text with an ellipsis added
    on each truncated side; input spans falling inside the excerpt are
    re-based to excerpt coordinates. Without spans, falls back to the
    first 2*window words.
    """
    words = [m.span() for m in _WORD_RE.finditer(segment_text)]
    if not words:
        return "", []

    if match_spans:
        first_start, first_end = match_spans[0]
        covering = [i for i, (ws, we) in enumerate(words) if we > first_start and ws < first_end]
        first_word = covering[0] if covering else 0
        last_word = covering[-1] if covering else 0
        lo = max(0, first_word - window)
        hi = min(len(words) - 1, last_word + window)
    else:
        lo = 0
        hi = min(len(words) - 1, 2 * window - 1)

    excerpt_start = words[lo][0]
    excerpt_end = words[hi][1]
    prefix = ELLIPSIS if lo > 0 else ""
    suffix = ELLIPSIS if hi < len(words) - 1 else ""
    snippet = prefix + segment_text[excerpt_start:excerpt_end] + suffix

    shift = len(prefix) - excerpt_start
    rebased = [
        (start + shift, end + shift)
        for start, end in match_spans
        if start >= excerpt_start and end <= excerpt_end
    ]
    return snippet, rebased
