"""Phrase chunking over tagged tokens.

Candidate phrases are maximal contiguous runs of content tokens
(ADJ/NOUN/PROPN/NUM/DATEWORD) that end in a head token; stopwords and
punctuation never sit at a phrase edge because they never enter a run.
Date words are carved out into their own phrases so "New York last May"
yields the location "New York" and the date "last May" rather than one
mixed phrase.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tokens import Token

_CONTENT = frozenset({"ADJ", "NOUN", "PROPN", "NUM", "DATEWORD"})
_NOUN_HEAD = frozenset({"NOUN", "PROPN", "NUM"})
_DATEISH = frozenset({"ADJ", "NUM", "DATEWORD"})
_DATE_END = frozenset({"DATEWORD", "NUM"})


@dataclass(frozen=True)
class Phrase:
    """A contiguous candidate phrase.

    `token_indices` is the [start, stop) range into the token list the phrase
    was chunked from; `tokens` is that slice, kept so downstream stages can
    reach tags without the original list.
    """

    text: str
    token_indices: tuple[int, int]
    span: tuple[int, int]
    tokens: tuple[Token, ...]


def _make_phrase(tokens: list[Token], start: int, stop: int) -> Phrase:
    members = tuple(tokens[start:stop])
    return Phrase(
        text=" ".join(t.surface for t in members),
        token_indices=(start, stop),
        span=(members[0].span[0], members[-1].span[1]),
        tokens=members,
    )


def chunk_noun_phrases(tokens: list[Token]) -> list[Phrase]:
    """Extract candidate phrases in order of appearance."""
    phrases: list[Phrase] = []
    i = 0
    n = len(tokens)
    while i < n:
        if tokens[i].tag not in _CONTENT:
            i += 1
            continue
        j = i
        while j < n and tokens[j].tag in _CONTENT:
            j += 1
        phrases.extend(_split_run(tokens, i, j))
        i = j
    return phrases


def _split_run(tokens: list[Token], start: int, stop: int) -> list[Phrase]:
    """Split one maximal content run into date phrases and noun phrases."""
    date_ranges = _date_subruns(tokens, start, stop)
    pieces: list[tuple[int, int, bool]] = []
    cursor = start
    for d0, d1 in date_ranges:
        if cursor < d0:
            pieces.append((cursor, d0, False))
        pieces.append((d0, d1, True))
        cursor = d1
    if cursor < stop:
        pieces.append((cursor, stop, False))

    out = []
    for p0, p1, is_date in pieces:
        if is_date:
            out.append(_make_phrase(tokens, p0, p1))
            continue
        # Noun phrase: trim trailing ADJs, require a NOUN/PROPN/NUM head.
        while p1 > p0 and tokens[p1 - 1].tag not in _NOUN_HEAD:
            p1 -= 1
        if p1 > p0 and any(tokens[k].tag in _NOUN_HEAD for k in range(p0, p1)):
            out.append(_make_phrase(tokens, p0, p1))
    return out


def _date_subruns(tokens: list[Token], start: int, stop: int) -> list[tuple[int, int]]:
    """Maximal ADJ/NUM/DATEWORD subruns containing a DATEWORD, trimmed to end
    on a DATEWORD or NUM."""
    ranges: list[tuple[int, int]] = []
    i = start
    while i < stop:
        if tokens[i].tag not in _DATEISH:
            i += 1
            continue
        j = i
        has_date = False
        while j < stop and tokens[j].tag in _DATEISH:
            has_date = has_date or tokens[j].tag == "DATEWORD"
            j += 1
        if has_date:
            end = j
            while end > i and tokens[end - 1].tag not in _DATE_END:
                end -= 1
            if any(tokens[k].tag == "DATEWORD" for k in range(i, end)):
                ranges.append((i, end))
        i = j
    return ranges
