"""Lexicon-lookup POS tagger and the vertical ``form<TAB>tag`` reader/writer."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from .annotations import Document
from .errors import ParseError, StateError
from .segment import NUMBER, PUNCT, SENTENCE, TOKEN, WORD

NUMBER_TAG = "M"
PUNCT_TAG = "PT"


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, str] = field(default_factory=dict)
    source_path: str = ""

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, form: str) -> bool:
        return form.casefold() in self.entries

    def lookup(self, form: str) -> str | None:
        return self.entries.get(form.casefold())

    def tags(self) -> set[str]:
        return set(self.entries.values())


@dataclass(frozen=True)
class TaggingPolicy:
    unknown_tag: str = "Unknown"
    case_fold: bool = True


def _split_entry(line: str, lineno: int, source: str) -> tuple[str, str]:
    parts = line.split("\t")
    if len(parts) != 2:
        raise ParseError(f"expected 'form<TAB>tag', got {line!r}", lineno, source)
    form, tag = parts[0].strip(), parts[1].strip()
    if not form or not tag:
        raise ParseError(f"empty form or tag in {line!r}", lineno, source)
    if any(ch.isspace() for ch in form + tag):
        raise ParseError(f"whitespace inside form or tag in {line!r}", lineno, source)
    return form, tag


def parse_lexicon(lines: Iterable[str], source: str = "<lexicon>") -> Lexicon:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        form, tag = _split_entry(line, lineno, source)
        # file is frequency ordered: keep the first reading
        entries.setdefault(form.casefold(), tag)
    return Lexicon(entries, source)


def load_lexicon(path: str | Path) -> Lexicon:
    with open(path, encoding="utf-8-sig", newline="") as fh:
        return parse_lexicon(fh.read().splitlines(), str(path))


def tag_tokens(doc: Document, lex: Lexicon, policy: TaggingPolicy | None = None) -> int:
    policy = policy or TaggingPolicy()
    tokens = doc.of_type(TOKEN)
    if not tokens:
        raise StateError("tagging needs Token annotations")
    tagged = 0
    for tok in tokens:
        kind = tok.get("kind")
        if kind == NUMBER:
            tag = NUMBER_TAG
        elif kind == PUNCT:
            tag = PUNCT_TAG
        else:
            text = tok.get("string") or doc.text[tok.start:tok.end]
            tag = lex.lookup(text) if policy.case_fold else lex.entries.get(text)
            if tag is None:
                tag = policy.unknown_tag
        doc.set_feature(tok.id, "category", tag)
        if tag != policy.unknown_tag:
            tagged += 1
    return tagged


def ingest_pretagged(stream: TextIO | Iterable[str], source_name: str = "-") -> Document:
    """Build a tokenized, split and tagged document from vertical input."""
    sentences: list[list[tuple[str, str]]] = [[]]
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if sentences[-1]:
                sentences.append([])
            continue
        sentences[-1].append(_split_entry(line, lineno, source_name))
    if not sentences[-1]:
        sentences.pop()

    text_parts: list[str] = []
    spans: list[list[tuple[int, int, str, str]]] = []
    offset = 0
    for s_idx, sent in enumerate(sentences):
        if s_idx:
            text_parts.append("\n")
            offset += 1
        row = []
        for t_idx, (form, tag) in enumerate(sent):
            if t_idx:
                text_parts.append(" ")
                offset += 1
            row.append((offset, offset + len(form), form, tag))
            text_parts.append(form)
            offset += len(form)
        spans.append(row)

    doc = Document("".join(text_parts), source_name)
    for row in spans:
        for start, end, form, tag in row:
            doc.add(TOKEN, start, end, {"string": form, "kind": WORD, "category": tag})
        doc.add(SENTENCE, row[0][0], row[-1][1])
    return doc


def write_vertical(doc: Document) -> str:
    """Render tagged tokens one per line, blank line between sentences."""
    out: list[str] = []
    for s_idx, sent in enumerate(doc.of_type(SENTENCE)):
        if s_idx:
            out.append("")
        for tok in doc.within(TOKEN, sent.start, sent.end):
            out.append(f"{tok.get('string')}\t{tok.get('category', '')}")
    return "\n".join(out) + ("\n" if out else "")
