"""Operator command line.

Machine-readable JSON goes to stdout, human diagnostics to stderr.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .corpus import corpus_stats, load_corpus, validate_corpus
from .errors import OhtError
from .index import apply_annotation, build_index
from .search import execute_search, known_facet_names, parse_query
from .service import SearchService, ServiceConfig, create_app, search_result_doc, word_cloud_doc
from .wordcloud import build_word_cloud
from .workspace import ANNOTATIONS_FILE, AnnotationLog


def _corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True, metavar="DIR", help="corpus root directory")
    parser.add_argument("--schema", required=True, metavar="FILE", help="facet schema file (facets.json)")


def _data_dir_arg(parser: argparse.ArgumentParser, required: bool = False) -> None:
    default = os.environ.get("OHT_DATA_DIR")
    parser.add_argument(
        "--data-dir",
        metavar="DIR",
        default=default,
        required=required and default is None,
        help="workspace/annotation data directory (default: $OHT_DATA_DIR)",
    )


def _query_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-q", "--query", default="", help="query text")
    parser.add_argument(
        "-f",
        "--filter",
        action="append",
        default=[],
        metavar="FACET:VALUE",
        help="facet filter, repeatable",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oht", description="Search and explore oral-history interview collections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="report every corpus problem")
    _corpus_args(p_validate)

    p_stats = sub.add_parser("stats", help="corpus overview counts")
    _corpus_args(p_stats)

    p_search = sub.add_parser("search", help="ranked search with facet filters")
    _corpus_args(p_search)
    _data_dir_arg(p_search)
    _query_args(p_search)
    p_search.add_argument("--page", type=int, default=1)
    p_search.add_argument("--size", type=int, default=10)

    p_cloud = sub.add_parser("wordcloud", help="weighted terms over the result scope")
    _corpus_args(p_cloud)
    _data_dir_arg(p_cloud)
    _query_args(p_cloud)
    p_cloud.add_argument("-k", type=int, default=50, help="number of terms")

    p_export = sub.add_parser("export", help="citation-ready workspace manifest")
    _corpus_args(p_export)
    _data_dir_arg(p_export, required=True)
    p_export.add_argument("--workspace", required=True, metavar="ID", help="workspace id")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    _corpus_args(p_serve)
    _data_dir_arg(p_serve, required=True)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static", metavar="DIR", default=None, help="static UI bundle to serve under /")

    return parser


def _load_index(args: argparse.Namespace):
    corpus = load_corpus(args.corpus, args.schema)
    index = build_index(corpus)
    if getattr(args, "data_dir", None):
        log = AnnotationLog(Path(args.data_dir) / ANNOTATIONS_FILE)
        for annotation in log.replay():
            index = apply_annotation(index, annotation)
    return corpus, index


def _emit(payload: object) -> None:
    json.dump(payload, sys.stdout, ensure_ascii=False, indent=2)
    sys.stdout.write("\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except OhtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args: argparse.Namespace) -> int:
    if args.command == "validate":
        problems = validate_corpus(args.corpus, args.schema)
        _emit({"valid": not problems, "problems": [{"path": p.path, "reason": p.reason} for p in problems]})
        return 1 if problems else 0

    if args.command == "stats":
        stats = corpus_stats(load_corpus(args.corpus, args.schema))
        _emit(
            {
                "interviews": stats.interviews,
                "total_duration_ms": stats.total_duration_ms,
                "facets": stats.facets,
                "collections": stats.collections,
            }
        )
        return 0

    if args.command == "search":
        _, index = _load_index(args)
        query = parse_query(args.query, args.filter, index.options, known_facet_names(index))
        result = execute_search(index, query, page=args.page, page_size=args.size)
        _emit(search_result_doc(result))
        return 0

    if args.command == "wordcloud":
        _, index = _load_index(args)
        query = parse_query(args.query, args.filter, index.options, known_facet_names(index))
        cloud = build_word_cloud(index, query, args.k)
        _emit(word_cloud_doc(cloud, index.epoch))
        return 0

    if args.command == "export":
        service = _service_from_args(args)
        _emit(service.export_workspace(args.workspace))
        return 0

    if args.command == "serve":
        import uvicorn

        service = _service_from_args(args)
        app = create_app(service)
        print(f"serving {len(service.corpus.interviews)} interviews on port {args.port}", file=sys.stderr)
        uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def _service_from_args(args: argparse.Namespace) -> SearchService:
    config = ServiceConfig(
        corpus_dir=Path(args.corpus),
        schema_path=Path(args.schema),
        data_dir=Path(args.data_dir),
        port=getattr(args, "port", 8000),
        static_dir=Path(args.static) if getattr(args, "static", None) else None,
    )
    return SearchService(config)


if __name__ == "__main__":
    sys.exit(main())
