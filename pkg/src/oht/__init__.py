"""oht: exploratory search over time-aligned oral-history interview collections.

Ranked full-text search with visual faceted filtering, result-scope word
clouds, and scholar workspaces (saved sets, a virtual fragment cutter,
manual annotations that enrich the searchable index).
"""

from .corpus import (
    Corpus,
    CorpusStats,
    FacetDefinition,
    Interview,
    Segment,
    corpus_stats,
    load_corpus,
    validate_corpus,
    validate_interview,
    write_corpus,
)
from .index import (
    ANNOTATION_SEGMENT,
    METADATA_SEGMENT,
    Index,
    Posting,
    TokenizerOptions,
    apply_annotation,
    build_index,
    term_idf,
    tokenize,
)
from .search import (
    FacetCount,
    FacetValueCount,
    FragmentHit,
    InterviewHit,
    Query,
    SearchResult,
    compute_facet_counts,
    execute_search,
    make_snippet,
    parse_query,
    score_interview,
)
from .service import SearchService, ServiceConfig, create_app
from .wordcloud import WeightedTerm, WordCloud, build_word_cloud
from .workspace import (
    AnnotationLog,
    Fragment,
    ManualAnnotation,
    Workspace,
    WorkspaceItem,
    WorkspaceStore,
    format_timecode,
    make_annotation,
)

__version__ = "0.1.0"
