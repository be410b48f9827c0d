"""BulTreeBank (BTB-TS) positional tags for adjectives and nouns.

Layouts handled here (1-based character positions)::

    adjective  A <gender> <number> <definiteness>        e.g. Ansi, A-pd, Amsh
    noun       N <c|p> <gender> <number> <definiteness>  e.g. Ncnpi, Ncmsd, Ncmt

Every other first letter decodes to ``PosClass.OTHER`` with no features.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import UnsupportedError, ValidationError


class PosClass(str, Enum):
    ADJECTIVE = "Adjective"
    NOUN = "Noun"
    OTHER = "Other"


class Gender(str, Enum):
    MASCULINE = "masculine"
    FEMININE = "feminine"
    NEUTER = "neuter"
    UNSPECIFIED = "unspecified"


class Number(str, Enum):
    SINGULAR = "singular"
    PLURAL = "plural"
    COUNT = "count"
    UNSPECIFIED = "unspecified"


class Definiteness(str, Enum):
    INDEFINITE = "indefinite"
    DEFINITE = "definite"
    UNSPECIFIED = "unspecified"


class Disagreement(str, Enum):
    # declaration order is the reporting order
    NUMBER = "NumberMismatch"
    GENDER = "GenderMismatch"
    DEFINITENESS = "DefinitenessPlacement"


_GENDER = {"m": Gender.MASCULINE, "f": Gender.FEMININE, "n": Gender.NEUTER}
_ADJ_NUMBER = {"s": Number.SINGULAR, "p": Number.PLURAL}
_NOUN_NUMBER = {"s": Number.SINGULAR, "p": Number.PLURAL, "t": Number.COUNT}
# h = short and f = full masculine article; both are just "definite" here
_DEFINITENESS = {"i": Definiteness.INDEFINITE, "d": Definiteness.DEFINITE,
                 "h": Definiteness.DEFINITE, "f": Definiteness.DEFINITE}

_GENDER_LETTER = {v: k for k, v in _GENDER.items()}
_NUMBER_LETTER = {Number.SINGULAR: "s", Number.PLURAL: "p", Number.COUNT: "t"}
_DEFINITENESS_LETTER = {Definiteness.INDEFINITE: "i", Definiteness.DEFINITE: "d"}


@dataclass(frozen=True)
class MorphFeatures:
    pos_class: PosClass
    gender: Gender = Gender.UNSPECIFIED
    number: Number = Number.UNSPECIFIED
    definiteness: Definiteness = Definiteness.UNSPECIFIED
    raw: str = ""


def _at(tag: str, i: int, table: dict):
    return table.get(tag[i]) if i < len(tag) else None


def decode_tag(tag: str) -> MorphFeatures:
    """Decode a BTB-TS tag; total on non-empty strings."""
    if not tag:
        raise ValidationError("cannot decode an empty tag")
    if tag[0] == "A":
        gender, number, definiteness = (_at(tag, 1, _GENDER), _at(tag, 2, _ADJ_NUMBER),
                                        _at(tag, 3, _DEFINITENESS))
        pos = PosClass.ADJECTIVE
    elif tag[0] == "N":
        # position 2 (common/proper) is kept only in ``raw``
        gender, number, definiteness = (_at(tag, 2, _GENDER), _at(tag, 3, _NOUN_NUMBER),
                                        _at(tag, 4, _DEFINITENESS))
        pos = PosClass.NOUN
    else:
        return MorphFeatures(PosClass.OTHER, raw=tag)
    return MorphFeatures(
        pos,
        gender or Gender.UNSPECIFIED,
        number or Number.UNSPECIFIED,
        definiteness or Definiteness.UNSPECIFIED,
        raw=tag,
    )


def encode_tag(f: MorphFeatures) -> str:
    """Canonical tag for ``f``; unspecified trailing slots are dropped, inner ones become '-'."""
    if f.pos_class is PosClass.ADJECTIVE:
        if f.number is Number.COUNT:
            raise UnsupportedError("adjectives have no count form")
        prefix = "A"
    elif f.pos_class is PosClass.NOUN:
        prefix = "Nc"
    else:
        raise UnsupportedError(f"cannot encode features of class {f.pos_class.value}")
    slots = [
        _GENDER_LETTER.get(f.gender, "-"),
        _NUMBER_LETTER.get(f.number, "-"),
        _DEFINITENESS_LETTER.get(f.definiteness, "-"),
    ]
    while slots and slots[-1] == "-":
        slots.pop()
    return prefix + "".join(slots)


def normalize_tag(tag: str) -> str:
    """Map a lexicon tag onto the canonical form ``encode_tag`` produces."""
    f = decode_tag(tag)
    if f.pos_class is PosClass.OTHER:
        return tag
    return encode_tag(f)


def _as_plural(n: Number) -> Number:
    return Number.PLURAL if n is Number.COUNT else n


def agreement_check(adj: MorphFeatures, noun: MorphFeatures) -> list[Disagreement]:
    if adj.pos_class is not PosClass.ADJECTIVE:
        raise ValidationError(f"expected an adjective, got {adj.pos_class.value} ({adj.raw!r})")
    if noun.pos_class is not PosClass.NOUN:
        raise ValidationError(f"expected a noun, got {noun.pos_class.value} ({noun.raw!r})")

    found = []
    a_num, n_num = _as_plural(adj.number), _as_plural(noun.number)
    if Number.UNSPECIFIED not in (a_num, n_num) and a_num is not n_num:
        found.append(Disagreement.NUMBER)
    if (
        adj.number in (Number.SINGULAR, Number.UNSPECIFIED)
        and noun.number is Number.SINGULAR
        and Gender.UNSPECIFIED not in (adj.gender, noun.gender)
        and adj.gender is not noun.gender
    ):
        found.append(Disagreement.GENDER)
    if noun.definiteness is Definiteness.DEFINITE:
        found.append(Disagreement.DEFINITENESS)
    return found
