"""End-to-end keyword extraction: tokenize -> chunk -> classify -> rank -> filter.

A phrase's score is the sum of its member tokens' graph scores. Entity phrases
(anything but General) are always kept; General phrases survive only when they
score above the segment's mean phrase score. Keywords already emitted for the
session are dropped, which keeps re-runs over growing intermediate results
from re-broadcasting the same phrase.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from ..textnorm import normalize_phrase
from .chunks import Phrase, chunk_noun_phrases
from .entities import EntityCategory, GazetteerSet, classify_entity, color_for, load_gazetteers
from .lexicon import Lexicon, load_lexicon
from .rank import (
    DEFAULT_DAMPING,
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITER,
    DEFAULT_WINDOW,
    build_cooccurrence_graph,
    textrank,
)
from .tokens import tokenize


@dataclass(frozen=True)
class ExtractionParams:
    """Tunable pipeline parameters; defaults are the canonical ranking values."""

    language: str = "en"
    damping: float = DEFAULT_DAMPING
    window: int = DEFAULT_WINDOW
    epsilon: float = DEFAULT_EPSILON
    max_iter: int = DEFAULT_MAX_ITER
    stopword_path: Path | None = None
    lexicon_path: Path | None = None
    gazetteer_path: Path | None = None


@dataclass(frozen=True)
class Keyword:
    id: str
    phrase: str
    normalized: str
    category: EntityCategory
    score: float
    source_seq: int
    color_code: str

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "phrase": self.phrase,
            "normalized": self.normalized,
            "category": self.category.value,
            "score": self.score,
            "source_seq": self.source_seq,
            "color_code": self.color_code,
        }


@dataclass
class StageTimings:
    """Per-stage wall times in milliseconds, filled when passed to extract."""

    tokenize_ms: float = 0.0
    chunk_ms: float = 0.0
    classify_ms: float = 0.0
    rank_ms: float = 0.0

    def total_ms(self) -> float:
        return self.tokenize_ms + self.chunk_ms + self.classify_ms + self.rank_ms


@dataclass(frozen=True)
class ScoredPhrase:
    phrase: Phrase
    category: EntityCategory
    score: float


class KeywordExtractor:
    """Deterministic extractor bound to one lexicon + gazetteer load."""

    def __init__(self, params: ExtractionParams | None = None,
                 lexicon: Lexicon | None = None,
                 gazetteers: GazetteerSet | None = None):
        self.params = params or ExtractionParams()
        self.lexicon = lexicon or load_lexicon(
            self.params.language,
            stopword_path=self.params.stopword_path,
            lexicon_path=self.params.lexicon_path,
        )
        self.gazetteers = gazetteers or load_gazetteers(self.params.gazetteer_path)

    def score_phrases(self, text: str, timings: StageTimings | None = None) -> list[ScoredPhrase]:
        """Run the pipeline over one segment text without any session state."""
        p = self.params
        t0 = time.perf_counter()
        tokens = tokenize(text, self.lexicon)
        t1 = time.perf_counter()
        phrases = chunk_noun_phrases(tokens)
        t2 = time.perf_counter()
        categories = [classify_entity(ph, self.gazetteers) for ph in phrases]
        t3 = time.perf_counter()
        graph = build_cooccurrence_graph(tokens, p.window)
        scores = textrank(graph, p.damping, p.epsilon, p.max_iter)
        t4 = time.perf_counter()
        if timings is not None:
            timings.tokenize_ms += (t1 - t0) * 1000.0
            timings.chunk_ms += (t2 - t1) * 1000.0
            timings.classify_ms += (t3 - t2) * 1000.0
            timings.rank_ms += (t4 - t3) * 1000.0
        return [
            ScoredPhrase(
                phrase=ph,
                category=cat,
                score=sum(scores.get(tok.lower, 0.0) for tok in ph.tokens),
            )
            for ph, cat in zip(phrases, categories)
        ]

    def extract_keywords(self, segment_text: str, emitted: set[str], source_seq: int,
                         next_id, timings: StageTimings | None = None) -> list[Keyword]:
        """Keywords for one segment, deduplicated against `emitted`.

        `emitted` is updated in place with the normalized form of every
        returned keyword; `next_id` supplies identifiers (called once per
        keyword).
        """
        scored = self.score_phrases(segment_text, timings)
        if not scored:
            return []
        mean_score = sum(sp.score for sp in scored) / len(scored)
        keywords: list[Keyword] = []
        for sp in scored:
            if sp.category is EntityCategory.GENERAL and sp.score <= mean_score:
                continue
            normalized = normalize_phrase(sp.phrase.text)
            if normalized in emitted:
                continue
            emitted.add(normalized)
            keywords.append(
                Keyword(
                    id=next_id(),
                    phrase=sp.phrase.text,
                    normalized=normalized,
                    category=sp.category,
                    score=sp.score,
                    source_seq=source_seq,
                    color_code=color_for(sp.category),
                )
            )
        return keywords
