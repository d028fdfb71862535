"""Seeded random corpus and query generation for property and oracle tests."""

from __future__ import annotations

import random

from oht.corpus import Corpus, FacetDefinition, Interview, Segment
from oht.index import TokenizerOptions
from oht.search import Query

# Content words plus a sprinkle of stopwords so stopword handling is exercised.
VOCAB = [f"w{i:02d}" for i in range(48)] + [
    "oorlog",
    "kamp",
    "veteraan",
    "archief",
    "dijk",
    "fabriek",
    "migratie",
    "zeppelin1900",
]
STOPWORD_SAMPLE = ["de", "het", "van", "een", "the", "of", "and", "was"]
WORD_POOL = VOCAB + STOPWORD_SAMPLE

FACET_VALUES = {
    "genre": [f"g{i}" for i in range(6)],  # multi-valued
    "region": [f"r{i}" for i in range(5)],  # multi-valued
    "language": ["nl", "en", "fy"],  # single-valued
    "period": ["1930s", "1940s", "1950s", "1960s"],  # single-valued
}
SINGLE_VALUED = {"language", "period"}

SCHEMA = tuple(
    FacetDefinition(name=name, label=name.title(), display_order=i)
    for i, name in enumerate(FACET_VALUES)
)


def random_text(rng: random.Random, min_words: int, max_words: int) -> str:
    return " ".join(rng.choices(WORD_POOL, k=rng.randint(min_words, max_words)))


def random_interview(rng: random.Random, number: int, collections: list[str]) -> Interview:
    segments = []
    clock = 0
    for position in range(rng.randint(0, 10)):
        start = clock + (rng.randint(0, 3000) if rng.random() < 0.3 else 0)
        end = start + rng.randint(1000, 60000)
        segments.append(
            Segment(
                segment_id=position,
                start_ms=start,
                end_ms=end,
                speaker=rng.choice([None, "A", "B"]),
                text=random_text(rng, 0, 40),
            )
        )
        clock = end
    duration = clock + rng.randint(0, 10000)

    facets: dict[str, frozenset[str]] = {}
    for name, values in FACET_VALUES.items():
        if rng.random() < 0.15:  # heterogeneous: facet omitted
            continue
        count = 1 if name in SINGLE_VALUED else rng.randint(1, 3)
        facets[name] = frozenset(rng.sample(values, k=min(count, len(values))))

    return Interview(
        id=f"iv{number:04d}",
        title=random_text(rng, 0, 5),
        collection_id=rng.choice(collections),
        speakers=tuple(rng.sample(["Jan", "Anna", "Cor", "Els"], k=rng.randint(0, 2))),
        date=rng.choice([None, "1995-04-14", "2001-11-02"]),
        duration_ms=duration,
        summary=random_text(rng, 0, 30),
        facets=facets,
        segments=tuple(segments),
        media_url=rng.choice([None, f"https://media.example.org/{number}.mp4"]),
    )


def random_corpus(rng: random.Random, max_interviews: int = 200) -> Corpus:
    collections = [f"c{i}" for i in range(rng.randint(1, 3))]
    count = rng.randint(0, max_interviews)
    interviews = tuple(random_interview(rng, i, collections) for i in range(count))
    return Corpus(
        interviews=interviews,
        facet_schema=SCHEMA,
        collections=frozenset(iv.collection_id for iv in interviews),
    )


def random_query(rng: random.Random, options: TokenizerOptions) -> Query:
    terms: list[str] = []
    roll = rng.random()
    if roll < 0.15:
        pass  # match-all
    else:
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.1:
                terms.append("nosuchterm")
            else:
                terms.append(rng.choice(VOCAB))
    filters: dict[str, frozenset[str]] = {}
    for name, values in FACET_VALUES.items():
        if rng.random() < 0.3:
            chosen = rng.sample(values, k=rng.randint(1, 2))
            if rng.random() < 0.05:
                chosen.append("nosuchvalue")
            filters[name] = frozenset(chosen)
    return Query(terms=tuple(terms), filters=filters)
