"""Corpus pipeline: tokenize -> split sentences -> tag -> transduce, plus reporting."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .annotations import Corpus, Document
from .errors import AglintError, ConfigError, ParseError
from .grammar import CONTROLS, Grammar, load_grammar
from .segment import SENTENCE, TOKEN, SplitterConfig, split_sentences, tokenize
from .tagger import Lexicon, TaggingPolicy, load_lexicon, tag_tokens
from .transducer import run_transducer

log = logging.getLogger(__name__)

ERROR_SUFFIX = "AgrError"
LEXICON_ENV = "AGLINT_LEXICON"

STAGE_ORDER = ("tokenizer", "sentence-splitter", "pos-tagger", "transducer")


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("aglint") / "data" / name))


def default_lexicon_path() -> Path:
    env = os.environ.get(LEXICON_ENV)
    return Path(env) if env else bundled_path("lexicon.tsv")


def default_grammar_path() -> Path:
    return bundled_path("agreement.jape")


@dataclass(frozen=True)
class Stage:
    name: str
    config: Any = None


@dataclass(frozen=True)
class Pipeline:
    stages: tuple[Stage, ...]

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    @property
    def splitter(self) -> SplitterConfig:
        return self.stage("sentence-splitter").config

    @property
    def lexicon(self) -> Lexicon:
        return self.stage("pos-tagger").config[0]

    @property
    def policy(self) -> TaggingPolicy:
        return self.stage("pos-tagger").config[1]

    @property
    def grammar(self) -> Grammar:
        return self.stage("transducer").config


def make_pipeline(lexicon: Lexicon, grammar: Grammar, splitter: SplitterConfig | None = None,
                  policy: TaggingPolicy | None = None) -> Pipeline:
    return Pipeline((
        Stage("tokenizer"),
        Stage("sentence-splitter", splitter or SplitterConfig()),
        Stage("pos-tagger", (lexicon, policy or TaggingPolicy())),
        Stage("transducer", grammar),
    ))


def build_pipeline(lexicon_path=None, grammar_path=None, control_override: str | None = None,
                   splitter: SplitterConfig | None = None) -> Pipeline:
    lexicon_path = lexicon_path or default_lexicon_path()
    grammar_path = grammar_path or default_grammar_path()
    try:
        lexicon = load_lexicon(lexicon_path)
    except OSError as exc:
        raise ConfigError(f"cannot read lexicon {lexicon_path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise ConfigError(f"bad lexicon: {exc}") from exc
    try:
        grammar = load_grammar(grammar_path)
    except OSError as exc:
        raise ConfigError(f"cannot read grammar {grammar_path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise ConfigError(f"bad grammar: {exc}") from exc
    if control_override is not None:
        if control_override not in CONTROLS:
            raise ConfigError(f"unknown control style {control_override!r}")
        grammar = grammar.with_control(control_override)
    return make_pipeline(lexicon, grammar, splitter)


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class ErrorReport:
    rule: str
    annotation_type: str
    start: int
    end: int
    text: str
    sentence_index: int
    tokens: tuple[tuple[str, str], ...]

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "type": self.annotation_type,
            "start": self.start,
            "end": self.end,
            "text": self.text,
            "sentence": self.sentence_index,
            "tokens": [{"text": t, "category": c} for t, c in self.tokens],
        }


@dataclass
class DocumentResult:
    source: str
    errors: list[ErrorReport] = field(default_factory=list)
    failure: str | None = None


@dataclass
class RunSummary:
    documents: list[DocumentResult] = field(default_factory=list)

    @property
    def documents_processed(self) -> int:
        return len(self.documents)

    @property
    def errors(self) -> list[ErrorReport]:
        return [e for d in self.documents for e in d.errors]

    @property
    def total_errors(self) -> int:
        return sum(len(d.errors) for d in self.documents)

    @property
    def failed(self) -> bool:
        return any(d.failure is not None for d in self.documents)

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 2
        return 1 if self.total_errors else 0


def collect_reports(doc: Document) -> list[ErrorReport]:
    sentences = doc.of_type(SENTENCE)
    tokens = doc.of_type(TOKEN)
    reports = []
    for ann in doc.annotations:
        if not ann.type.endswith(ERROR_SUFFIX):
            continue
        sentence_index = next(
            (k for k, s in enumerate(sentences) if s.start <= ann.start and ann.end <= s.end), -1
        )
        covered = tuple(
            (t.get("string") or doc.text[t.start:t.end], t.get("category", ""))
            for t in tokens
            if ann.start <= t.start and t.end <= ann.end
        )
        reports.append(ErrorReport(
            rule=ann.get("rule", ""),
            annotation_type=ann.type,
            start=ann.start,
            end=ann.end,
            text=doc.covered_text(ann.start, ann.end),
            sentence_index=sentence_index,
            tokens=covered,
        ))
    reports.sort(key=lambda r: (r.start, r.end, r.annotation_type, r.rule))
    return reports


def process_document(p: Pipeline, doc: Document, pretagged: bool = False) -> list[ErrorReport]:
    """Run every stage over ``doc`` (in place) and return its error reports."""
    if not pretagged:
        if tokenize(doc) == 0:
            return []
        split_sentences(doc, p.splitter)
        tag_tokens(doc, p.lexicon, p.policy)
    for sentence in doc.of_type(SENTENCE):
        run_transducer(p.grammar, doc, (sentence.start, sentence.end))
    return collect_reports(doc)


def _run_one(p: Pipeline, doc: Document, pretagged: bool) -> DocumentResult:
    try:
        return DocumentResult(doc.source_name, process_document(p, doc, pretagged))
    except AglintError as exc:
        log.error("%s: %s", doc.source_name, exc)
        return DocumentResult(doc.source_name, failure=str(exc))


def run_pipeline(p: Pipeline, corpus: Corpus, pretagged: bool = False, workers: int = 1) -> RunSummary:
    docs = list(corpus)
    if workers > 1 and len(docs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda d: _run_one(p, d, pretagged), docs))
    else:
        results = [_run_one(p, d, pretagged) for d in docs]
    return RunSummary(results)


def render_report(s: RunSummary, format: str = "text") -> str:
    if format == "json":
        data = {
            "documents": [
                {"source": d.source, "errors": [e.to_json() for e in d.errors]} for d in s.documents
            ],
            "total_errors": s.total_errors,
        }
        return json.dumps(data, ensure_ascii=False, indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = []
    for d in s.documents:
        for e in d.errors:
            text = e.text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
            lines.append(f'{d.source}:{e.start}-{e.end}: [{e.rule}] "{text}"')
    return "".join(line + "\n" for line in lines)
