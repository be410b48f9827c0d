"""Rule-based tokenizer and sentence splitter.

Tokens are maximal runs of letters (``kind=word``) or digits
(``kind=number``); any other non-whitespace code point is a one-character
``punct`` token. Sentences end at terminator punctuation unless the period
follows a known abbreviation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .annotations import Document
from .errors import ConfigError, StateError, ValidationError

TOKEN = "Token"
SENTENCE = "Sentence"

WORD, NUMBER, PUNCT = "word", "number", "punct"


def _char_kind(ch: str) -> str | None:
    if ch.isspace():
        return None
    if ch.isalpha():
        return WORD
    if ch.isdigit():
        return NUMBER
    return PUNCT


def iter_token_spans(text: str):
    """Yield ``(start, end, kind)`` for every token of ``text``."""
    i, n = 0, len(text)
    while i < n:
        kind = _char_kind(text[i])
        if kind is None:
            i += 1
            continue
        j = i + 1
        if kind != PUNCT:
            while j < n and _char_kind(text[j]) == kind:
                j += 1
        yield i, j, kind
        i = j


def tokenize(doc: Document) -> int:
    if doc.has_type(TOKEN):
        raise StateError("document already has Token annotations")
    count = 0
    for start, end, kind in iter_token_spans(doc.text):
        doc.add(TOKEN, start, end, {"string": doc.text[start:end], "kind": kind})
        count += 1
    return count


DEFAULT_TERMINATORS = frozenset({".", "!", "?", "…"})
DEFAULT_ABBREVIATIONS = frozenset({"г", "гр", "стр", "т", "н", "напр"})


@dataclass(frozen=True)
class SplitterConfig:
    terminators: frozenset[str] = DEFAULT_TERMINATORS
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS

    def __post_init__(self):
        if not self.terminators:
            raise ValidationError("splitter needs at least one terminator")
        object.__setattr__(self, "terminators", frozenset(self.terminators))
        object.__setattr__(self, "abbreviations", frozenset(a.lower() for a in self.abbreviations))

    @classmethod
    def from_dict(cls, data: dict) -> "SplitterConfig":
        unknown = set(data) - {"terminators", "abbreviations"}
        if unknown:
            raise ConfigError(f"unknown splitter option(s): {', '.join(sorted(unknown))}")
        kwargs = {}
        for key in ("terminators", "abbreviations"):
            if key in data:
                value = data[key]
                if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                    raise ConfigError(f"splitter option {key!r} must be a list of strings")
                kwargs[key] = frozenset(value)
        try:
            return cls(**kwargs)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path) -> "SplitterConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read splitter config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"splitter config {path} must be a JSON object")
        return cls.from_dict(data.get("splitter", data))


def split_sentences(doc: Document, cfg: SplitterConfig | None = None) -> int:
    cfg = cfg or SplitterConfig()
    tokens = doc.of_type(TOKEN)
    if not tokens:
        raise StateError("sentence splitting needs Token annotations")
    if doc.has_type(SENTENCE):
        raise StateError("document already has Sentence annotations")

    def is_terminator(k: int) -> bool:
        tok = tokens[k]
        text = tok.get("string")
        if tok.get("kind") != PUNCT or text not in cfg.terminators:
            return False
        if text == "." and k > 0:
            prev = tokens[k - 1]
            if prev.get("kind") == WORD and prev.get("string", "").lower() in cfg.abbreviations:
                return False
        return True

    count = 0
    first = 0
    k = 0
    while k < len(tokens):
        if is_terminator(k):
            # "?!" or "..." stay attached to the sentence they close
            while k + 1 < len(tokens) and is_terminator(k + 1):
                k += 1
            doc.add(SENTENCE, tokens[first].start, tokens[k].end)
            count += 1
            first = k + 1
        k += 1
    if first < len(tokens):
        doc.add(SENTENCE, tokens[first].start, tokens[-1].end)
        count += 1
    return count
