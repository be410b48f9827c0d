"""Noun-adjective agreement checking for Bulgarian over stand-off annotations."""

from .annotations import Annotation, Corpus, Document, add_annotation, annotations_of_type, covered_text
from .errors import (AglintError, ConfigError, ParseError, SpanError, StateError, UnsupportedError,
                     ValidationError)
from .grammar import Grammar, Rule, load_grammar, parse_grammar
from .pipeline import (ErrorReport, Pipeline, RunSummary, build_pipeline, render_report,
                       run_pipeline)
from .segment import SplitterConfig, split_sentences, tokenize
from .tagger import Lexicon, TaggingPolicy, ingest_pretagged, load_lexicon, tag_tokens
from .tagset import Disagreement, MorphFeatures, PosClass, agreement_check, decode_tag, encode_tag
from .transducer import MatchResult, eval_constraint, run_transducer

__version__ = "0.1.0"

__all__ = [
    "AglintError", "Annotation", "ConfigError", "Corpus", "Disagreement", "Document", "ErrorReport",
    "Grammar", "Lexicon", "MatchResult", "MorphFeatures", "ParseError", "Pipeline", "PosClass", "Rule",
    "RunSummary", "SpanError", "SplitterConfig", "StateError", "TaggingPolicy", "UnsupportedError",
    "ValidationError", "add_annotation", "agreement_check", "annotations_of_type", "build_pipeline",
    "covered_text", "decode_tag", "encode_tag", "eval_constraint", "ingest_pretagged", "load_grammar",
    "load_lexicon", "parse_grammar", "render_report", "run_pipeline", "run_transducer",
    "split_sentences", "tag_tokens", "tokenize",
]
