"""Command-line entry points: index, annotate, serve, stats.

Exit codes: 0 success, 1 usage error (bad flags/arguments), 2 data
error (unreadable files, unknown sources, bad rule files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from urllib.parse import urljoin

from .annotate import POLICIES
from .errors import AutolinkError
from .harvest import IndexerRegistry, harvest_document, load_rules
from .linker import Linker
from .normalize import load_stopwords
from .service import FORMATS, ServiceConfig, create_app
from .store import ConceptStore, load_corpus, save_corpus

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for data
    # errors, so usage problems exit 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="autolink", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", parents=[], help="harvest concepts from pages")
    p_index.add_argument("--rules", required=True, help="rule file (one JSON object per line)")
    p_index.add_argument("--source", required=True, help="source id to harvest as")
    p_index.add_argument("--corpus", required=True, help="corpus file to create or grow")
    p_index.add_argument("--url-base", default=None,
                         help="base URL for harvested pages (default: file:// path)")
    p_index.add_argument("files", nargs="+", metavar="FILE")

    p_annotate = sub.add_parser("annotate", help="annotate HTML files or stdin")
    p_annotate.add_argument("--corpus", required=True)
    p_annotate.add_argument("--format", choices=FORMATS, default="embed")
    p_annotate.add_argument("--policy", choices=POLICIES, default="first")
    p_annotate.add_argument("--sources", default=None,
                            help="comma-separated source allow-list")
    p_annotate.add_argument("files", nargs="*", metavar="FILE")

    p_serve = sub.add_parser("serve", help="run the annotation service")
    p_serve.add_argument("--corpus", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--config", default=None,
                         help="JSON config (default: $NNEXUS_CONFIG if set)")

    p_stats = sub.add_parser("stats", help="print corpus counts per source")
    p_stats.add_argument("--corpus", required=True)
    return parser


def _cmd_index(args) -> int:
    registry = IndexerRegistry()
    for rule in load_rules(args.rules):
        registry.register(rule)
    if os.path.exists(args.corpus):
        store = load_corpus(args.corpus)
    else:
        store = ConceptStore()
    added = skipped = 0
    for name in args.files:
        html = Path(name).read_text(encoding="utf-8")
        if args.url_base:
            document_url = urljoin(args.url_base, Path(name).name)
        else:
            document_url = Path(name).resolve().as_uri()
        report = harvest_document(registry, args.source, html, document_url, store)
        added += report.added
        skipped += report.skipped
        for warning in report.warnings:
            print(f"{name}: {warning}", file=sys.stderr)
    count = save_corpus(store, args.corpus)
    print(f"added {added}, skipped {skipped}, corpus now {count} concepts")
    return 0


def _cmd_annotate(args) -> int:
    store = load_corpus(args.corpus)
    sources = None
    if args.sources is not None:
        sources = tuple(s for s in args.sources.split(",") if s)
    linker = Linker(store)
    if args.files:
        documents = [Path(name).read_text(encoding="utf-8") for name in args.files]
    else:
        documents = [sys.stdin.read()]
    for html in documents:
        result = linker.annotate(html, policy=args.policy, sources=sources)
        if args.format == "embed":
            sys.stdout.write(result.html)
            if not result.html.endswith("\n"):
                sys.stdout.write("\n")
        else:
            records = [a.as_record() for a in result.annotations]
            sys.stdout.write(json.dumps(records, ensure_ascii=False) + "\n")
    return 0


def _cmd_serve(args, parser: _Parser) -> int:
    config_path = args.config or os.environ.get("NNEXUS_CONFIG")
    config = ServiceConfig.load(config_path) if config_path else ServiceConfig()
    if args.corpus is not None:
        config.corpus = args.corpus
    if args.port is not None:
        config.port = args.port
    if config.corpus is None:
        parser.error("no corpus given (use --corpus or a config file)")
    stopwords = load_stopwords(config.stopwords) if config.stopwords else None
    store = load_corpus(config.corpus)
    linker = Linker(
        store,
        source_priority=config.source_priority,
        cache_capacity=config.cache_capacity,
        stopwords=stopwords,
    )
    app = create_app(linker, config)
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=config.port)
    return 0


def _cmd_stats(args) -> int:
    store = load_corpus(args.corpus)
    print(f"concepts: {len(store)}")
    counts: dict[str, int] = {}
    for concept in store.concepts():
        counts[concept.source] = counts.get(concept.source, 0) + 1
    for source in sorted(counts):
        print(f"{source}: {counts[source]}")
    for warning in store.load_warnings:
        print(warning, file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "index":
            return _cmd_index(args)
        if args.command == "annotate":
            return _cmd_annotate(args)
        if args.command == "serve":
            return _cmd_serve(args, parser)
        return _cmd_stats(args)
    except SystemExit as exit_:
        return int(exit_.code) if exit_.code is not None else 0
    except (AutolinkError, OSError, ValueError) as exc:
        print(f"autolink: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
