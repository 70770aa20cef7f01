"""Reference kinds, category routing, and the bundle container."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from ..nlp.entities import EntityCategory


class ReferenceKind(enum.Enum):
    IMAGE_SET = "image_set"
    SEARCH_RESULTS = "search_results"
    MAP = "map"
    WEATHER = "weather"
    WIKI_SNIPPET = "wiki_snippet"
    CALENDAR = "calendar"
    NEWS = "news"


# Universal kinds lead every plan; the first entry is what the client panel
# shows by default, keeping visual content ahead of text.
_UNIVERSAL = (ReferenceKind.IMAGE_SET, ReferenceKind.SEARCH_RESULTS)

_CATEGORY_EXTRAS: dict[EntityCategory, tuple[ReferenceKind, ...]] = {
    EntityCategory.LOCATION: (ReferenceKind.MAP, ReferenceKind.WEATHER),
    EntityCategory.ORGANIZATION: (ReferenceKind.WIKI_SNIPPET,),
    EntityCategory.PERSON: (ReferenceKind.WIKI_SNIPPET,),
    EntityCategory.DATE: (ReferenceKind.CALENDAR,),
    EntityCategory.NUMERIC: (),
    EntityCategory.GENERAL: (),
}

# Kinds whose bundles are fetched ahead of selection.
PREFETCH_KINDS = _UNIVERSAL


def plan_references(category: EntityCategory) -> list[ReferenceKind]:
    """Ordered reference kinds for a keyword category; never empty."""
    return list(_UNIVERSAL + _CATEGORY_EXTRAS[category])


BUNDLE_OK = "ok"
BUNDLE_UNAVAILABLE = "unavailable"


@dataclass(frozen=True)
class ReferenceBundle:
    """One fetched reference payload for a (keyword, kind) pair.

    `payload` is kind-shaped: a list for IMAGE_SET/SEARCH_RESULTS/NEWS, an
    object for the rest. Unavailable bundles carry per-provider failure
    reasons under `payload["errors"]` and a short ttl so the next selection
    retries.
    """

    keyword_id: str
    kind: ReferenceKind
    payload: Any
    provider_id: str
    fetched_at: float
    ttl_s: float
    status: str = BUNDLE_OK

    @property
    def ok(self) -> bool:
        return self.status == BUNDLE_OK

    def is_stale(self, now: float) -> bool:
        return now >= self.fetched_at + self.ttl_s

    def to_json(self) -> dict:
        return {
            "keyword_id": self.keyword_id,
            "kind": self.kind.value,
            "payload": self.payload,
            "provider_id": self.provider_id,
            "fetched_at": self.fetched_at,
            "ttl_s": self.ttl_s,
            "status": self.status,
        }
