"""Stand-off annotation model: documents, typed spans and corpora.

Offsets are Unicode code point indices into ``Document.text`` (Python ``str``
indexing), so reports do not depend on the input encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping

from .errors import SpanError, ValidationError


@dataclass(frozen=True)
class Annotation:
    id: int
    type: str
    start: int
    end: int
    features: Mapping[str, str] = field(default_factory=dict)

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def sort_key(self) -> tuple[int, int, int]:
        # start ascending, longer first, then insertion order
        return (self.start, -self.end, self.id)

    def get(self, name: str, default: str | None = None) -> str | None:
        return self.features.get(name, default)


class Document:
    """Immutable text plus an append-only set of annotations."""

    def __init__(self, text: str, source_name: str = "-"):
        self._text = text
        self.source_name = source_name
        self._annotations: list[Annotation] = []
        self._next_id = 0

    @property
    def text(self) -> str:
        return self._text

    def __len__(self) -> int:
        return len(self._text)

    def __repr__(self) -> str:
        return f"Document({self.source_name!r}, {len(self._text)} chars, {len(self._annotations)} annotations)"

    @property
    def annotations(self) -> tuple[Annotation, ...]:
        return tuple(self._annotations)

    def _check_span(self, start: int, end: int) -> None:
        if not (0 <= start <= end <= len(self._text)):
            raise SpanError(f"span ({start}, {end}) outside document of length {len(self._text)}")

    def add(self, type: str, start: int, end: int, features: Mapping[str, str] | None = None) -> int:
        if not type:
            raise ValidationError("annotation type must be non-empty")
        self._check_span(start, end)
        ann = Annotation(self._next_id, type, start, end, dict(features or {}))
        self._annotations.append(ann)
        self._next_id += 1
        return ann.id

    def set_feature(self, ann_id: int, name: str, value: str) -> Annotation:
        """Add or overwrite one feature; the span and type never change."""
        old = self._annotations[ann_id]
        new = replace(old, features={**old.features, name: value})
        self._annotations[ann_id] = new
        return new

    def of_type(self, type: str) -> list[Annotation]:
        return sorted((a for a in self._annotations if a.type == type), key=Annotation.sort_key)

    def has_type(self, type: str) -> bool:
        return any(a.type == type for a in self._annotations)

    def covered_text(self, start: int, end: int) -> str:
        self._check_span(start, end)
        return self._text[start:end]

    def within(self, type: str, start: int, end: int) -> list[Annotation]:
        """Annotations of ``type`` lying entirely inside ``[start, end)``."""
        return [a for a in self.of_type(type) if start <= a.start and a.end <= end]


def add_annotation(doc: Document, type: str, start: int, end: int, features: Mapping[str, str] | None = None) -> int:
    return doc.add(type, start, end, features)


def annotations_of_type(doc: Document, type: str) -> list[Annotation]:
    return doc.of_type(type)


def covered_text(doc: Document, start: int, end: int) -> str:
    return doc.covered_text(start, end)


@dataclass
class Corpus:
    documents: list[Document] = field(default_factory=list)

    def add(self, doc: Document) -> None:
        self.documents.append(doc)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def __len__(self) -> int:
        return len(self.documents)
