"""Reference providers.

A provider adapter exposes an id, a per-attempt timeout, and
query(phrase, category) -> payload. The bundled mock providers are pure
functions of (phrase, kind): they serve a fixture file when one exists
(filename = slug(phrase) + "." + kind value, JSON payload inside) and
otherwise synthesize a stable payload from a hash of the phrase. Calendar
payloads are computed locally from the date phrase itself; the one live
adapter (Wikipedia summaries) is config-optional and never touched by tests.
"""

from __future__ import annotations

import calendar as _calendar
import datetime as _dt
import hashlib
import json
import re
import threading
import time
from pathlib import Path
from typing import Any, Protocol

from ..nlp.entities import EntityCategory
from ..textnorm import slugify
from .kinds import ReferenceKind

DEFAULT_TIMEOUT_S = 2.0


class ProviderAdapter(Protocol):
    provider_id: str
    kind: ReferenceKind
    timeout_s: float

    def query(self, phrase: str, category: EntityCategory) -> Any: ...


class ProviderFailure(Exception):
    """Raised by adapters for any unusable result; the chain moves on."""


def _digest(phrase: str, kind: ReferenceKind, salt: str = "") -> int:
    h = hashlib.md5(f"{slugify(phrase)}|{kind.value}|{salt}".encode()).hexdigest()
    return int(h[:12], 16)


class MockProvider:
    """Deterministic fixture-backed provider with test hooks.

    `fail` forces ProviderFailure; `delay_s` sleeps before answering (for
    timeout tests); `calls` counts query invocations.
    """

    def __init__(self, kind: ReferenceKind, provider_id: str | None = None,
                 fixture_dir: Path | None = None, timeout_s: float = DEFAULT_TIMEOUT_S):
        self.kind = kind
        self.provider_id = provider_id or f"mock-{kind.value.replace('_', '-')}"
        self.fixture_dir = fixture_dir
        self.timeout_s = timeout_s
        self.fail = False
        self.delay_s = 0.0
        self.calls = 0
        self._lock = threading.Lock()

    def query(self, phrase: str, category: EntityCategory) -> Any:
        with self._lock:
            self.calls += 1
        if self.delay_s:
            time.sleep(self.delay_s)
        if self.fail:
            raise ProviderFailure(f"{self.provider_id} forced failure")
        fixture = self._load_fixture(phrase)
        if fixture is not None:
            return fixture
        return _synthesize(phrase, self.kind)

    def _load_fixture(self, phrase: str) -> Any | None:
        if self.fixture_dir is None:
            return None
        path = self.fixture_dir / f"{slugify(phrase)}.{self.kind.value}"
        if not path.is_file():
            return None
        return json.loads(path.read_text(encoding="utf-8"))


def _synthesize(phrase: str, kind: ReferenceKind) -> Any:
    slug = slugify(phrase)
    seed = _digest(phrase, kind)
    if kind is ReferenceKind.IMAGE_SET:
        return [
            {
                "url": f"https://images.example/{slug}/{i}.jpg",
                "thumb_url": f"https://images.example/{slug}/{i}_thumb.jpg",
                "caption": f"{phrase} ({i + 1})",
            }
            for i in range(4)
        ]
    if kind in (ReferenceKind.SEARCH_RESULTS, ReferenceKind.NEWS):
        corner = "news" if kind is ReferenceKind.NEWS else "search"
        return [
            {
                "title": f"{phrase} — result {i + 1}",
                "url": f"https://{corner}.example/{slug}/{i}",
                "snippet": f"Everything about {phrase}, part {i + 1}.",
            }
            for i in range(3)
        ]
    if kind is ReferenceKind.MAP:
        lat = round(seed % 18000 / 100.0 - 90.0, 4)
        lon = round(_digest(phrase, kind, "lon") % 36000 / 100.0 - 180.0, 4)
        return {
            "lat": lat,
            "lon": lon,
            "zoom": 11,
            "tile_or_static_url": f"https://maps.example/static/{slug}.png",
        }
    if kind is ReferenceKind.WEATHER:
        conditions = ("clear", "cloudy", "rain", "snow", "fog")
        temp = round(seed % 450 / 10.0 - 10.0, 1)
        return {
            "location_name": phrase,
            "temp_c": temp,
            "condition": conditions[seed % len(conditions)],
            "forecast": [
                {
                    "day_offset": i + 1,
                    "temp_c": round((_digest(phrase, kind, str(i)) % 450) / 10.0 - 10.0, 1),
                    "condition": conditions[_digest(phrase, kind, str(i)) % len(conditions)],
                }
                for i in range(3)
            ],
        }
    if kind is ReferenceKind.WIKI_SNIPPET:
        return {
            "title": phrase,
            "extract": f"{phrase} is a topic that came up in conversation. "
                       f"This synthetic summary stands in for a live encyclopedia entry.",
            "page_url": f"https://wiki.example/{slug}",
            "lead_image_url": f"https://images.example/{slug}/lead.jpg",
        }
    raise ProviderFailure(f"no synthetic payload for kind {kind.value}")


_RELATIVE_DAYS = {"today": 0, "tonight": 0, "tomorrow": 1, "yesterday": -1}
_MONTHS = {name.casefold(): i for i, name in enumerate(_calendar.month_name) if name}
_MONTHS.update({name.casefold(): i for i, name in enumerate(_calendar.month_abbr) if name})
_MONTHS["sept"] = 9
_WEEKDAYS = {name.casefold(): i for i, name in enumerate(_calendar.day_name)}
_WEEKDAYS.update({name.casefold(): i for i, name in enumerate(_calendar.day_abbr)})
_WEEKDAYS.update({"tues": 1, "thur": 3, "thurs": 3})

_YEAR_RE = re.compile(r"^(1[89]|20)\d{2}$")
_DAYNUM_RE = re.compile(r"^(\d{1,2})(st|nd|rd|th)?$")


class CalendarLocalProvider:
    """Resolves date phrases to concrete dates without any external service.

    `today` pins the reference day; tests inject it, production uses the
    actual date.
    """

    kind = ReferenceKind.CALENDAR
    provider_id = "calendar-local"
    timeout_s = DEFAULT_TIMEOUT_S

    def __init__(self, today: _dt.date | None = None):
        self._today = today

    def query(self, phrase: str, category: EntityCategory) -> Any:
        today = self._today or _dt.date.today()
        value = _parse_date_phrase(phrase, today)
        if value is None:
            raise ProviderFailure(f"cannot read {phrase!r} as a date")
        return {"iso_date_or_range": value, "label": phrase}


def _month_range(year: int, month: int) -> str:
    last = _calendar.monthrange(year, month)[1]
    return f"{year:04d}-{month:02d}-01/{year:04d}-{month:02d}-{last:02d}"


def _parse_date_phrase(phrase: str, today: _dt.date) -> str | None:
    words = phrase.casefold().split()
    if not words:
        return None
    shift = 0
    if words[0] in ("last", "previous"):
        shift = -1
        words = words[1:]
    elif words[0] in ("next", "upcoming", "this"):
        shift = 1 if words[0] != "this" else 0
        words = words[1:]
    if not words:
        return None

    head = words[0]
    if head in _RELATIVE_DAYS and len(words) == 1:
        day = today + _dt.timedelta(days=_RELATIVE_DAYS[head])
        return day.isoformat()

    if head in _WEEKDAYS and len(words) == 1:
        target = _WEEKDAYS[head]
        ahead = (target - today.weekday()) % 7
        if shift < 0:
            back = (today.weekday() - target) % 7 or 7
            return (today - _dt.timedelta(days=back)).isoformat()
        if ahead == 0:
            ahead = 7 if shift > 0 else 0
        return (today + _dt.timedelta(days=ahead)).isoformat()

    if head in _MONTHS:
        month = _MONTHS[head]
        rest = words[1:]
        if rest and _YEAR_RE.match(rest[0]):
            return _month_range(int(rest[0]), month)
        if rest:
            m = _DAYNUM_RE.match(rest[0])
            if m and 1 <= int(m.group(1)) <= 31:
                return _dt.date(_year_for(month, shift, today), month, int(m.group(1))).isoformat()
        return _month_range(_year_for(month, shift, today), month)

    if _YEAR_RE.match(head) and len(words) == 1:
        year = int(head)
        return f"{year:04d}-01-01/{year:04d}-12-31"
    return None


def _year_for(month: int, shift: int, today: _dt.date) -> int:
    if shift < 0:
        return today.year - 1 if month >= today.month else today.year
    if shift > 0:
        return today.year + 1 if month <= today.month else today.year
    return today.year


class WikipediaLiveProvider:
    """Optional live adapter for encyclopedia summaries (stdlib HTTP).

    Excluded from the default chain and from every test; enable through the
    references config. Response parsing lives in `parse_wiki_summary` so it
    can be exercised against recorded responses without any network.
    """

    kind = ReferenceKind.WIKI_SNIPPET
    provider_id = "wikipedia-live"

    def __init__(self, endpoint: str = "https://en.wikipedia.org/api/rest_v1/page/summary",
                 timeout_s: float = DEFAULT_TIMEOUT_S):
        self.endpoint = endpoint.rstrip("/")
        self.timeout_s = timeout_s

    def query(self, phrase: str, category: EntityCategory) -> Any:
        import urllib.parse
        import urllib.request

        url = f"{self.endpoint}/{urllib.parse.quote(phrase.replace(' ', '_'))}"
        try:
            with urllib.request.urlopen(url, timeout=self.timeout_s) as resp:
                document = json.loads(resp.read().decode("utf-8"))
        except Exception as exc:
            raise ProviderFailure(f"wikipedia fetch failed: {exc}") from exc
        return parse_wiki_summary(document)


def parse_wiki_summary(document: dict) -> dict:
    """Map a summary API document onto the wiki snippet payload shape."""
    extract = document.get("extract")
    title = document.get("title")
    if not extract or not title:
        raise ProviderFailure("summary document missing title or extract")
    page_url = (document.get("content_urls", {}).get("desktop", {}).get("page")
                or document.get("canonical_url", ""))
    thumb = document.get("thumbnail") or {}
    original = document.get("originalimage") or {}
    return {
        "title": title,
        "extract": extract,
        "page_url": page_url,
        "lead_image_url": original.get("source") or thumb.get("source") or "",
    }
