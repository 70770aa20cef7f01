"""Small text helpers shared across the pipeline."""

from __future__ import annotations

import re
import time

_SLUG_RE = re.compile(r"[^a-z0-9]+")


def normalize_phrase(phrase: str) -> str:
    """Dedup key for a phrase: case-folded, whitespace collapsed to single spaces."""
    return " ".join(phrase.split()).casefold()


def slugify(phrase: str) -> str:
    """Filesystem/url-safe slug: lowercase alphanumerics joined by hyphens."""
    return _SLUG_RE.sub("-", phrase.casefold()).strip("-") or "x"


def now_ms() -> float:
    """Monotonic clock in milliseconds."""
    return time.monotonic() * 1000.0
