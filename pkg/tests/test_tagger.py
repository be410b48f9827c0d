import io

import pytest

from aglint.annotations import Document
from aglint.errors import ParseError, StateError
from aglint.segment import split_sentences, tokenize
from aglint.tagger import (TaggingPolicy, ingest_pretagged, load_lexicon, parse_lexicon,
                           tag_tokens, write_vertical)
from aglint.tagset import PosClass, decode_tag


@pytest.fixture
def small_lexicon(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("щастливо\tAnsi\nдете\tNcnsi", encoding="utf-8")
    return load_lexicon(path)


def categories(doc):
    return [t.get("category") for t in doc.of_type("Token")]


def prepared(text):
    doc = Document(text)
    tokenize(doc)
    split_sentences(doc)
    return doc


def test_load_two_entries(small_lexicon):
    assert len(small_lexicon) == 2
    assert small_lexicon.lookup("дете") == "Ncnsi"


def test_first_entry_wins():
    lex = parse_lexicon(["дете\tNcnsi", "дете\tVxxx"])
    assert lex.lookup("дете") == "Ncnsi"


def test_space_instead_of_tab_names_line():
    with pytest.raises(ParseError) as err:
        parse_lexicon(["дете Ncnsi"])
    assert err.value.line == 1


def test_comments_blank_lines_and_crlf(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_bytes("# header\r\n\r\nДете\tNcnsi\r\n".encode("utf-8"))
    lex = load_lexicon(path)
    assert lex.entries == {"дете": "Ncnsi"}


def test_error_line_counts_comments():
    with pytest.raises(ParseError) as err:
        parse_lexicon(["# c", "", "a\tb\tc"])
    assert err.value.line == 3


def test_missing_lexicon_file(tmp_path):
    with pytest.raises(OSError):
        load_lexicon(tmp_path / "nope.tsv")


def test_tag_tokens(small_lexicon):
    doc = prepared("щастливо дете")
    assert tag_tokens(doc, small_lexicon) == 2
    assert categories(doc) == ["Ansi", "Ncnsi"]


def test_unknown_word(small_lexicon):
    doc = prepared("фъстък")
    assert tag_tokens(doc, small_lexicon) == 0
    assert categories(doc) == ["Unknown"]
    assert decode_tag("Unknown").pos_class is PosClass.OTHER


def test_case_folding(small_lexicon):
    doc = prepared("Щастливо")
    tag_tokens(doc, small_lexicon)
    assert categories(doc) == ["Ansi"]


def test_case_sensitive_policy(small_lexicon):
    doc = prepared("Щастливо")
    tag_tokens(doc, small_lexicon, TaggingPolicy(case_fold=False))
    assert categories(doc) == ["Unknown"]


def test_numbers_and_punctuation(small_lexicon):
    doc = prepared("дете 12.")
    assert tag_tokens(doc, small_lexicon) == 3
    assert categories(doc) == ["Ncnsi", "M", "PT"]


def test_tag_without_tokens_is_state_error(small_lexicon):
    with pytest.raises(StateError):
        tag_tokens(Document("дете"), small_lexicon)


def test_tagging_is_deterministic(small_lexicon):
    a, b = prepared("щастливо дете фъстък."), prepared("щастливо дете фъстък.")
    tag_tokens(a, small_lexicon)
    tag_tokens(b, small_lexicon)
    assert categories(a) == categories(b)


def test_ingest_single_sentence():
    doc = ingest_pretagged(io.StringIO("щастливи\tA-pi\nдете\tNcnsi\n"))
    assert doc.text == "щастливи дете"
    assert categories(doc) == ["A-pi", "Ncnsi"]
    assert [s.span for s in doc.of_type("Sentence")] == [(0, 13)]


def test_ingest_empty():
    doc = ingest_pretagged(io.StringIO(""))
    assert doc.text == ""
    assert doc.of_type("Token") == [] and doc.of_type("Sentence") == []


def test_ingest_two_blocks():
    doc = ingest_pretagged(io.StringIO("a\tA-pi\n\nb\tNcnsi\nc\tR\n\n\n"))
    assert doc.text == "a\nb c"
    assert [s.span for s in doc.of_type("Sentence")] == [(0, 1), (2, 5)]
    for t in doc.of_type("Token"):
        assert doc.text[t.start:t.end] == t.get("string")


def test_ingest_malformed_line():
    with pytest.raises(ParseError) as err:
        ingest_pretagged(io.StringIO("a\tAnsi\nbroken\n"))
    assert err.value.line == 2


def test_vertical_round_trip(small_lexicon):
    doc = prepared("щастливо дете. дете")
    tag_tokens(doc, small_lexicon)
    text = write_vertical(doc)
    assert text == "щастливо\tAnsi\nдете\tNcnsi\n.\tPT\n\nдете\tNcnsi\n"
    again = ingest_pretagged(io.StringIO(text))
    assert categories(again) == categories(doc)
    assert len(again.of_type("Sentence")) == 2
