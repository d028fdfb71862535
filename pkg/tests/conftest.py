from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from oht.corpus import Corpus, FacetDefinition, Interview, Segment

DEMO_DIR = Path(__file__).resolve().parents[1] / "demo"
DEMO_CORPUS = DEMO_DIR / "corpus"
DEMO_SCHEMA = DEMO_DIR / "facets.json"

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"  {name}: {outcome.upper()}")


def make_interview(
    interview_id: str,
    segment_texts: list[str] | None = None,
    title: str = "",
    summary: str = "",
    collection: str = "c1",
    facets: dict[str, set[str]] | None = None,
    segment_ms: int = 60000,
    duration_ms: int | None = None,
) -> Interview:
    texts = segment_texts or []
    segments = tuple(
        Segment(
            segment_id=i,
            start_ms=i * segment_ms,
            end_ms=(i + 1) * segment_ms,
            speaker=None,
            text=text,
        )
        for i, text in enumerate(texts)
    )
    return Interview(
        id=interview_id,
        title=title,
        collection_id=collection,
        speakers=(),
        date=None,
        duration_ms=duration_ms if duration_ms is not None else len(texts) * segment_ms,
        summary=summary,
        facets={name: frozenset(values) for name, values in (facets or {}).items()},
        segments=segments,
        media_url=None,
    )


def make_corpus(interviews: list[Interview], facet_names: list[str] | None = None) -> Corpus:
    if facet_names is None:
        seen: list[str] = []
        for iv in interviews:
            for name in iv.facets:
                if name not in seen:
                    seen.append(name)
        facet_names = seen
    schema = tuple(
        FacetDefinition(name=name, label=name.title(), display_order=i)
        for i, name in enumerate(facet_names)
    )
    ordered = tuple(sorted(interviews, key=lambda iv: iv.id))
    return Corpus(
        interviews=ordered,
        facet_schema=schema,
        collections=frozenset(iv.collection_id for iv in ordered),
    )


@pytest.fixture
def genre_corpus() -> Corpus:
    """Three interviews: I1,I2 genre=war, I3 genre=migration."""
    return make_corpus(
        [
            make_interview("I1", ["the war started"], facets={"genre": {"war"}, "language": {"nl"}}),
            make_interview("I2", ["war and peace camp"], facets={"genre": {"war"}, "language": {"en"}}),
            make_interview("I3", ["migration story harbor"], facets={"genre": {"migration"}}),
        ],
        facet_names=["genre", "language"],
    )


def seq_id_factory(prefix: str):
    counter = itertools.count(1)
    return lambda: f"{prefix}-{next(counter):04d}"


def fixed_clock():
    return "2024-01-15T12:00:00.000Z"
