"""Entity categories via priority-ordered pattern rules and gazetteer lookup.

Categories are checked Date -> Numeric -> Organization -> Location -> Person,
falling back to General. Gazetteer matching is case-insensitive on the whole
phrase or on its head (final) token.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigInvalidError
from ..textnorm import normalize_phrase
from .chunks import Phrase
from .lexicon import default_data_path, read_lines


class EntityCategory(enum.Enum):
    ORGANIZATION = "organization"
    LOCATION = "location"
    PERSON = "person"
    DATE = "date"
    NUMERIC = "numeric"
    GENERAL = "general"


# Paper-fixed chip colors; Numeric and General stay neutral.
CATEGORY_COLORS = {
    EntityCategory.PERSON: "red",
    EntityCategory.LOCATION: "blue",
    EntityCategory.ORGANIZATION: "purple",
    EntityCategory.DATE: "green",
    EntityCategory.NUMERIC: "neutral",
    EntityCategory.GENERAL: "neutral",
}


def color_for(category: EntityCategory) -> str:
    return CATEGORY_COLORS[category]


_DATE_PATTERNS = [
    re.compile(r"^\d{4}-\d{2}(-\d{2})?$"),          # 2024-05 / 2024-05-12
    re.compile(r"^\d{1,2}/\d{1,2}/\d{2,4}$"),       # 12/5/2024
    re.compile(r"^(1[89]|20)\d{2}$"),               # bare year
]

_NUMERIC_PATTERN = re.compile(r"^[$€£]?\d[\d,]*(\.\d+)?(%|st|nd|rd|th)?$")

_GAZETTEER_SECTIONS = ("organization", "location", "person")


@dataclass(frozen=True)
class GazetteerSet:
    organizations: frozenset[str]
    locations: frozenset[str]
    persons: frozenset[str]

    def category_of(self, normalized: str, head: str) -> EntityCategory | None:
        ordered = (
            (self.organizations, EntityCategory.ORGANIZATION),
            (self.locations, EntityCategory.LOCATION),
            (self.persons, EntityCategory.PERSON),
        )
        # A whole-phrase hit is more specific than a head-token hit and wins
        # across categories ("nikola tesla" the person, not "tesla" the firm).
        for entries, category in ordered:
            if normalized in entries:
                return category
        for entries, category in ordered:
            if head in entries:
                return category
        return None


def load_gazetteers(path: Path | None = None) -> GazetteerSet:
    """Parse a sectioned gazetteer file ([organization]/[location]/[person])."""
    path = path or default_data_path("gazetteer_en.txt")
    sections: dict[str, set[str]] = {name: set() for name in _GAZETTEER_SECTIONS}
    current: set[str] | None = None
    for line in read_lines(path):
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().casefold()
            if name not in sections:
                raise ConfigInvalidError(f"unknown gazetteer section [{name}] in {path}")
            current = sections[name]
            continue
        if current is None:
            raise ConfigInvalidError(f"entry before first section in {path}: {line!r}")
        current.add(normalize_phrase(line))
    return GazetteerSet(
        organizations=frozenset(sections["organization"]),
        locations=frozenset(sections["location"]),
        persons=frozenset(sections["person"]),
    )


def classify_entity(phrase: Phrase, gazetteers: GazetteerSet) -> EntityCategory:
    """Assign exactly one category to a phrase."""
    normalized = normalize_phrase(phrase.text)
    if any(t.tag == "DATEWORD" for t in phrase.tokens):
        return EntityCategory.DATE
    for pattern in _DATE_PATTERNS:
        if pattern.match(normalized):
            return EntityCategory.DATE
    if any(t.tag == "NUM" for t in phrase.tokens) or _NUMERIC_PATTERN.match(normalized):
        return EntityCategory.NUMERIC
    head = phrase.tokens[-1].lower
    return gazetteers.category_of(normalized, head) or EntityCategory.GENERAL
