"""Rule-based keyword extraction pipeline."""

from .chunks import Phrase, chunk_noun_phrases
from .entities import (
    CATEGORY_COLORS,
    EntityCategory,
    GazetteerSet,
    classify_entity,
    color_for,
    load_gazetteers,
)
from .extract import ExtractionParams, Keyword, KeywordExtractor, ScoredPhrase, StageTimings
from .lexicon import Lexicon, load_lexicon
from .rank import CooccurrenceGraph, build_cooccurrence_graph, textrank
from .tokens import Token, tokenize

__all__ = [
    "CATEGORY_COLORS",
    "CooccurrenceGraph",
    "EntityCategory",
    "ExtractionParams",
    "GazetteerSet",
    "Keyword",
    "KeywordExtractor",
    "Lexicon",
    "Phrase",
    "ScoredPhrase",
    "StageTimings",
    "Token",
    "build_cooccurrence_graph",
    "chunk_noun_phrases",
    "classify_entity",
    "color_for",
    "load_gazetteers",
    "load_lexicon",
    "textrank",
    "tokenize",
]
