"""Command line entry point: ``aglint check | tag | grammar-check``."""

from __future__ import annotations

import argparse
import io
import logging
import sys
from pathlib import Path

from .annotations import Corpus, Document
from .errors import AglintError, ParseError
from .grammar import CONTROLS, load_grammar
from .pipeline import build_pipeline, render_report, run_pipeline
from .segment import SplitterConfig, split_sentences, tokenize
from .tagger import ingest_pretagged, tag_tokens, write_vertical

log = logging.getLogger("aglint")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.buffer.read().decode("utf-8-sig")
    return Path(path).read_bytes().decode("utf-8-sig")


def _expand(paths: list[str]) -> list[str]:
    out = []
    for p in paths:
        if p != "-" and Path(p).is_dir():
            out.extend(str(f) for f in sorted(Path(p).iterdir()) if f.is_file() and f.suffix in (".txt", ".vert"))
        else:
            out.append(p)
    return out


def _load_corpus(paths: list[str], pretagged: bool) -> Corpus:
    corpus = Corpus()
    for path in _expand(paths):
        text = _read_text(path)
        if pretagged:
            corpus.add(ingest_pretagged(io.StringIO(text), path))
        else:
            corpus.add(Document(text, path))
    return corpus


def cmd_check(args) -> int:
    splitter = SplitterConfig.load(args.config) if args.config else None
    pipeline = build_pipeline(args.lexicon, args.grammar, args.control, splitter)
    corpus = _load_corpus(args.paths, args.pretagged)
    summary = run_pipeline(pipeline, corpus, pretagged=args.pretagged)
    sys.stdout.write(render_report(summary, args.format))
    return summary.exit_code


def cmd_tag(args) -> int:
    splitter = SplitterConfig.load(args.config) if args.config else None
    pipeline = build_pipeline(args.lexicon, None, None, splitter)
    for k, path in enumerate(_expand(args.paths)):
        doc = Document(_read_text(path), path)
        if tokenize(doc):
            split_sentences(doc, pipeline.splitter)
            tag_tokens(doc, pipeline.lexicon, pipeline.policy)
        if k:
            sys.stdout.write("\n")
        sys.stdout.write(write_vertical(doc))
    return 0


def cmd_grammar_check(args) -> int:
    try:
        grammar = load_grammar(args.file)
    except OSError as exc:
        print(f"aglint: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"aglint: {exc}", file=sys.stderr)
        return 1
    n = len(grammar.rules)
    print(f"OK, {n} rule{'s' if n != 1 else ''}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aglint", description="Detect noun-adjective agreement errors in Bulgarian text.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="report agreement errors")
    check.add_argument("paths", nargs="+", metavar="path", help="text file, directory, or - for stdin")
    check.add_argument("--lexicon", help="form<TAB>tag lexicon (default: $AGLINT_LEXICON or bundled)")
    check.add_argument("--grammar", help="grammar file (default: bundled agreement grammar)")
    check.add_argument("--pretagged", action="store_true", help="input is vertical form<TAB>tag text")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--control", choices=CONTROLS, help="override the grammar's control style")
    check.add_argument("--config", help="JSON file with sentence splitter settings")
    check.set_defaults(func=cmd_check)

    tag = sub.add_parser("tag", help="tokenize, split and tag; print vertical format")
    tag.add_argument("paths", nargs="+", metavar="path")
    tag.add_argument("--lexicon")
    tag.add_argument("--config", help="JSON file with sentence splitter settings")
    tag.set_defaults(func=cmd_tag)

    gcheck = sub.add_parser("grammar-check", help="parse a grammar file and report problems")
    gcheck.add_argument("file")
    gcheck.set_defaults(func=cmd_grammar_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="aglint: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (AglintError, OSError, UnicodeDecodeError) as exc:
        print(f"aglint: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
