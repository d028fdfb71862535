"""Segment-granular inverted index with facet index and corpus statistics.

An Index value is immutable: readers may share it freely across threads.
Enrichment by a manual annotation produces a *new* Index with the epoch
bumped by one; the old value stays valid, so publication of the new epoch
is a single reference assignment in the service layer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from .corpus import Corpus, FacetDefinition, Interview
from .errors import UnknownInterview
from .stopwords import DEFAULT_STOPWORDS

if TYPE_CHECKING:
    from .workspace import ManualAnnotation

# Sentinel segment ids; real segments are numbered from 0.
METADATA_SEGMENT = -1  # title + summary tokens
ANNOTATION_SEGMENT = -2  # annotation tokens without an enclosing segment

# BM25 defaults; the scoring model is a standard choice, not tuned.
BM25_K1 = 1.2
BM25_B = 0.75

# Runs of Unicode alphanumerics (underscore is a boundary, not a letter).
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class TokenizerOptions:
    remove_stopwords: bool = True
    stopwords: frozenset[str] = DEFAULT_STOPWORDS


def tokenize(text: str, options: TokenizerOptions | None = None) -> list[str]:
    """Lowercased tokens split on non-alphanumeric boundaries.

    Stopwords are dropped only when options.remove_stopwords is set.
    Index-side and query-side tokenization must use identical options.
    """
    opts = options or TokenizerOptions()
    tokens = _TOKEN_RE.findall(text.lower())
    if opts.remove_stopwords:
        tokens = [t for t in tokens if t not in opts.stopwords]
    return tokens


@dataclass(frozen=True)
class Posting:
    interview_id: str
    segment_id: int  # >= 0, or a sentinel above
    positions: tuple[int, ...]  # strictly increasing token offsets

    @property
    def term_frequency(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class Index:
    postings: dict[str, tuple[Posting, ...]]
    doc_lengths: dict[str, int]  # interview id -> indexed token count
    avg_doc_length: float
    facet_index: dict[tuple[str, str], frozenset[str]]  # (facet, value) -> ids
    doc_count: int
    df: dict[str, int]  # term -> number of interviews containing it
    epoch: int
    interviews: dict[str, Interview]  # document store for hits and snippets
    facet_schema: tuple[FacetDefinition, ...]
    options: TokenizerOptions

    def terms(self) -> list[str]:
        return list(self.postings)


def _index_token_stream(
    postings_out: dict[str, dict[tuple[str, int], list[int]]],
    interview_id: str,
    segment_id: int,
    tokens: list[str],
    base_position: int,
) -> None:
    for offset, token in enumerate(tokens):
        postings_out.setdefault(token, {}).setdefault((interview_id, segment_id), []).append(
            base_position + offset
        )


def build_index(corpus: Corpus, options: TokenizerOptions | None = None) -> Index:
    """Index every segment plus each interview's title+summary metadata.

    Deterministic: the same corpus and options produce identical contents.
    """
    opts = options or TokenizerOptions()
    # term -> (interview, segment) -> positions
    raw_postings: dict[str, dict[tuple[str, int], list[int]]] = {}
    doc_lengths: dict[str, int] = {}
    facet_index: dict[tuple[str, str], set[str]] = {}

    for interview in corpus.interviews:
        position = 0
        meta_tokens = tokenize(interview.title, opts) + tokenize(interview.summary, opts)
        _index_token_stream(raw_postings, interview.id, METADATA_SEGMENT, meta_tokens, position)
        position += len(meta_tokens)
        for segment in interview.segments:
            seg_tokens = tokenize(segment.text, opts)
            _index_token_stream(raw_postings, interview.id, segment.segment_id, seg_tokens, position)
            position += len(seg_tokens)
        doc_lengths[interview.id] = position
        for name, values in interview.facets.items():
            for value in values:
                facet_index.setdefault((name, value), set()).add(interview.id)

    postings: dict[str, tuple[Posting, ...]] = {}
    df: dict[str, int] = {}
    for term in sorted(raw_postings):
        entries = raw_postings[term]
        plist = tuple(
            Posting(interview_id=iid, segment_id=sid, positions=tuple(positions))
            for (iid, sid), positions in sorted(entries.items())
        )
        postings[term] = plist
        df[term] = len({p.interview_id for p in plist})

    doc_count = len(corpus.interviews)
    avg = sum(doc_lengths.values()) / doc_count if doc_count else 0.0
    return Index(
        postings=postings,
        doc_lengths=doc_lengths,
        avg_doc_length=avg,
        facet_index={key: frozenset(ids) for key, ids in sorted(facet_index.items())},
        doc_count=doc_count,
        df=df,
        epoch=0,
        interviews={iv.id: iv for iv in corpus.interviews},
        facet_schema=corpus.facet_schema,
        options=opts,
    )


def term_idf(index: Index, term: str) -> float:
    """ln(1 + (N - df + 0.5) / (df + 0.5)); df=0 terms never match anything."""
    df = index.df.get(term, 0)
    return math.log(1.0 + (index.doc_count - df + 0.5) / (df + 0.5))


def _enclosing_segment(interview: Interview, start_ms: int, end_ms: int) -> int:
    for segment in interview.segments:
        if segment.start_ms <= start_ms and end_ms <= segment.end_ms:
            return segment.segment_id
    return ANNOTATION_SEGMENT


def apply_annotation(index: Index, annotation: ManualAnnotation) -> Index:
    """Enrich the index with one manual annotation; returns a new epoch.

    Existing postings are never removed or mutated. Annotation tokens are
    appended as fresh postings (positions continue from the interview's
    running token count); tags land in the facet index under "tags".
    """
    interview = index.interviews.get(annotation.interview_id)
    if interview is None:
        raise UnknownInterview(annotation.interview_id)

    tokens = tokenize(annotation.text, index.options)
    segment_id = ANNOTATION_SEGMENT
    if annotation.start_ms is not None and annotation.end_ms is not None:
        segment_id = _enclosing_segment(interview, annotation.start_ms, annotation.end_ms)

    postings = index.postings
    df = index.df
    doc_lengths = index.doc_lengths
    avg = index.avg_doc_length
    if tokens:
        base = index.doc_lengths[annotation.interview_id]
        by_term: dict[str, list[int]] = {}
        for offset, token in enumerate(tokens):
            by_term.setdefault(token, []).append(base + offset)

        postings = dict(index.postings)
        df = dict(index.df)
        for term, positions in by_term.items():
            existing = postings.get(term, ())
            if not any(p.interview_id == annotation.interview_id for p in existing):
                df[term] = df.get(term, 0) + 1
            postings[term] = existing + (
                Posting(
                    interview_id=annotation.interview_id,
                    segment_id=segment_id,
                    positions=tuple(positions),
                ),
            )
        doc_lengths = dict(index.doc_lengths)
        doc_lengths[annotation.interview_id] = base + len(tokens)
        avg = sum(doc_lengths.values()) / index.doc_count

    facet_index = index.facet_index
    if annotation.tags:
        facet_index = dict(index.facet_index)
        for tag in annotation.tags:
            key = ("tags", tag)
            facet_index[key] = facet_index.get(key, frozenset()) | {annotation.interview_id}

    return replace(
        index,
        postings=postings,
        doc_lengths=doc_lengths,
        avg_doc_length=avg,
        facet_index=facet_index,
        df=df,
        epoch=index.epoch + 1,
    )
