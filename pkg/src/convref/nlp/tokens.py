"""Deterministic rule-based tokenizer with coarse part-of-speech tags.

Tags come from lexicon lookup (stopwords, tagged word lists, date words,
numeral pattern); words missing from every list default to OTHER, except that
unknown capitalized words become PROPN. A capitalized sentence-initial word is
only PROPN when the common-word lexicon does not know it, which keeps "The" or
"Visited" from turning into proper nouns.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import Lexicon

# Words (with internal apostrophes/hyphens), numbers (currency, decimals,
# percent, ordinals), or any single non-space symbol.
_TOKEN_RE = re.compile(
    r"[$€£]?\d[\d,]*(?:\.\d+)?(?:%|st|nd|rd|th)?"
    r"|[^\W\d_]+(?:['’\-][^\W\d_]+)*"
    r"|\S",
    re.UNICODE,
)

_NUM_RE = re.compile(r"^[$€£]?\d[\d,]*(?:\.\d+)?(?:%|st|nd|rd|th)?$")

_SENTENCE_END = frozenset(".!?")


@dataclass(frozen=True)
class Token:
    """One surface token with its [start, end) span into the segment text."""

    surface: str
    span: tuple[int, int]
    lower: str
    tag: str  # NOUN | PROPN | VERB | ADJ | NUM | DATEWORD | STOP | OTHER


def _is_capitalized(surface: str) -> bool:
    return surface[:1].isupper()


def tokenize(text: str, lexicon: Lexicon) -> list[Token]:
    """Split text into tagged tokens; punctuation stays as OTHER tokens."""
    tokens: list[Token] = []
    sentence_start = True
    for m in _TOKEN_RE.finditer(text):
        surface = m.group()
        lower = surface.casefold()
        tag = _tag_for(surface, lower, sentence_start, lexicon)
        tokens.append(Token(surface=surface, span=(m.start(), m.end()), lower=lower, tag=tag))
        sentence_start = surface in _SENTENCE_END
    return tokens


def _tag_for(surface: str, lower: str, sentence_start: bool, lexicon: Lexicon) -> str:
    if _NUM_RE.match(surface):
        return "NUM"
    if not surface[:1].isalpha():
        return "OTHER"
    if lower in lexicon.datewords:
        return "DATEWORD"
    if lower in lexicon.datewords_cap and _is_capitalized(surface):
        return "DATEWORD"
    if lexicon.is_stopword(lower):
        return "STOP"
    tag = lexicon.lookup_tag(lower)
    if tag is not None:
        if tag == "VERB" and _is_capitalized(surface) and not sentence_start:
            # Capitalized mid-sentence verb forms ("Mark", "Drew") read as names.
            return "PROPN"
        return tag
    if _is_capitalized(surface):
        return "PROPN"
    return "OTHER"
