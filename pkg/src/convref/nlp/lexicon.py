"""Word lists backing the rule-based tagger.

The tagger is lexicon-driven: a stopword list, a coarse tagged word list
(noun/verb/adjective/number), and month/weekday/relative-day lists. Ambiguous
date words ("May", "March", abbreviations) are kept in a separate list that
only matches capitalized surface forms.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigInvalidError

_DATA_PACKAGE = "convref.data"

# Sections allowed in the tagged lexicon file, mapped to tagger tags.
_SECTION_TAGS = {
    "noun": "NOUN",
    "verb": "VERB",
    "adjective": "ADJ",
    "number": "NUM",
    "dateword": "DATEWORD",
    "dateword_cap": "DATEWORD",
}


def default_data_path(name: str) -> Path:
    """Path of a bundled data file."""
    return Path(str(importlib.resources.files(_DATA_PACKAGE).joinpath(name)))


def read_lines(path: Path) -> list[str]:
    lines = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    return lines


@dataclass(frozen=True)
class Lexicon:
    """Immutable lookup tables for the tagger."""

    stopwords: frozenset[str]
    tags: dict[str, str]                 # case-folded word -> coarse tag
    verb_bases: frozenset[str]           # every verb-section word, even when
                                         # a noun entry shadows it in `tags`
    datewords: frozenset[str]            # match any casing
    datewords_cap: frozenset[str]        # match only capitalized surfaces

    def is_stopword(self, lower: str) -> bool:
        return lower in self.stopwords

    def is_known(self, lower: str) -> bool:
        """Whether the word belongs to the common-word lexicon (any list)."""
        return (
            lower in self.stopwords
            or lower in self.tags
            or lower in self.datewords
            or lower in self.datewords_cap
            or self.lookup_tag(lower) is not None
        )

    def lookup_tag(self, lower: str) -> str | None:
        """Tag for a case-folded word, trying light suffix stripping.

        Stripping only guesses the tag for inflected forms ("museums",
        "visited", "hiking"); it never changes the word's identity elsewhere.
        -ed/-ing forms prefer the verb reading ("visited" stays a verb even
        though "visit" the noun shadows "visit" the verb), while -s forms
        prefer the noun reading (plurals outnumber third-person verbs here).
        """
        tag = self.tags.get(lower)
        if tag is not None:
            return tag
        for base, verbish in _strip_candidates(lower):
            if verbish and base in self.verb_bases:
                return "VERB"
            tag = self.tags.get(base)
            if tag is not None:
                return tag
        return None


def _strip_candidates(word: str) -> list[tuple[str, bool]]:
    """(base, prefers-verb-reading) candidates for an inflected form."""
    out = []
    if len(word) > 3 and word.endswith("ies"):
        out.append((word[:-3] + "y", False))
    if len(word) > 2 and word.endswith("es"):
        out.append((word[:-2], False))
    if len(word) > 2 and word.endswith("s"):
        out.append((word[:-1], False))
    if len(word) > 3 and word.endswith("ed"):
        out.append((word[:-2], True))
        out.append((word[:-1], True))         # bake[d]
        if len(word) > 4 and word[-3] == word[-4]:
            out.append((word[:-3], True))     # plann[ed] -> plan
    if len(word) > 4 and word.endswith("ing"):
        out.append((word[:-3], True))
        out.append((word[:-3] + "e", True))   # hik[ing] -> hike
        if len(word) > 5 and word[-4] == word[-5]:
            out.append((word[:-4], True))     # runn[ing] -> run
    return out


def load_stopwords(path: Path) -> frozenset[str]:
    return frozenset(w.casefold() for w in read_lines(path))


def load_tagged_words(
    path: Path,
) -> tuple[dict[str, str], frozenset[str], frozenset[str], frozenset[str]]:
    """Parse the sectioned lexicon file.

    Returns (tags, verb_bases, datewords, datewords_cap).
    """
    tags: dict[str, str] = {}
    verb_bases: set[str] = set()
    datewords: set[str] = set()
    datewords_cap: set[str] = set()
    section = None
    for line in read_lines(path):
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().casefold()
            if section not in _SECTION_TAGS:
                raise ConfigInvalidError(f"unknown lexicon section [{section}] in {path}")
            continue
        if section is None:
            raise ConfigInvalidError(f"entry before first section in {path}: {line!r}")
        word = line.casefold()
        if section == "dateword":
            datewords.add(word)
        elif section == "dateword_cap":
            datewords_cap.add(word)
        else:
            if section == "verb":
                verb_bases.add(word)
            # First listing wins, so nouns shadow identical verb entries.
            tags.setdefault(word, _SECTION_TAGS[section])
    return tags, frozenset(verb_bases), frozenset(datewords), frozenset(datewords_cap)


def load_lexicon(language: str = "en",
                 stopword_path: Path | None = None,
                 lexicon_path: Path | None = None) -> Lexicon:
    """Load the lexicon for a language tag; only "en" resources are bundled."""
    if language != "en":
        raise ConfigInvalidError(f"unsupported language {language!r}; bundled resources cover 'en'")
    stopword_path = stopword_path or default_data_path("stopwords_en.txt")
    lexicon_path = lexicon_path or default_data_path("lexicon_en.txt")
    tags, verb_bases, datewords, datewords_cap = load_tagged_words(lexicon_path)
    return Lexicon(
        stopwords=load_stopwords(stopword_path),
        tags=tags,
        verb_bases=verb_bases,
        datewords=datewords,
        datewords_cap=datewords_cap,
    )
