"""Weighted term cloud over the current result scope.

Weighting is scope term frequency times corpus IDF, which surfaces the
terminology that distinguishes the material in scope. Query terms and
stopwords are excluded; they would trivially dominate the cloud. A
match-all query yields the whole-collection cloud.
"""

from __future__ import annotations

from dataclasses import dataclass

from .index import Index, term_idf
from .search import Query, query_scope


@dataclass(frozen=True)
class WeightedTerm:
    term: str
    weight: float  # raw / max raw of the cloud, in (0, 1]
    raw: float  # scope tf * idf


@dataclass(frozen=True)
class WordCloud:
    terms: tuple[WeightedTerm, ...]  # sorted by weight desc, term asc
    scope_total: int


def build_word_cloud(index: Index, query: Query, k: int) -> WordCloud:
    if k < 1:
        raise ValueError("k must be >= 1")
    scope = query_scope(index, query)
    if not scope:
        return WordCloud(terms=(), scope_total=0)

    excluded = set(query.terms)
    stopwords = index.options.stopwords
    raws: list[tuple[float, str]] = []
    for term, postings in index.postings.items():
        if term in excluded or term in stopwords:
            continue
        tf = 0
        for posting in postings:
            if posting.interview_id in scope:
                tf += posting.term_frequency
        if tf > 0:
            raws.append((tf * term_idf(index, term), term))

    raws.sort(key=lambda pair: (-pair[0], pair[1]))
    top = raws[:k]
    if not top:
        return WordCloud(terms=(), scope_total=len(scope))
    max_raw = top[0][0]
    return WordCloud(
        terms=tuple(WeightedTerm(term=t, weight=raw / max_raw, raw=raw) for raw, t in top),
        scope_total=len(scope),
    )
