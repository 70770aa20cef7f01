"""Reference planning, fetching, prefetching, and caching."""

from .cache import PrefetchCache
from .engine import PrefetchBatch, ReferenceConfig, ReferenceEngine, UNAVAILABLE_CODE
from .kinds import (
    BUNDLE_OK,
    BUNDLE_UNAVAILABLE,
    PREFETCH_KINDS,
    ReferenceBundle,
    ReferenceKind,
    plan_references,
)
from .providers import (
    CalendarLocalProvider,
    MockProvider,
    ProviderAdapter,
    ProviderFailure,
    WikipediaLiveProvider,
    parse_wiki_summary,
)

__all__ = [
    "BUNDLE_OK",
    "BUNDLE_UNAVAILABLE",
    "CalendarLocalProvider",
    "MockProvider",
    "PREFETCH_KINDS",
    "PrefetchBatch",
    "PrefetchCache",
    "ProviderAdapter",
    "ProviderFailure",
    "ReferenceBundle",
    "ReferenceConfig",
    "ReferenceEngine",
    "ReferenceKind",
    "UNAVAILABLE_CODE",
    "WikipediaLiveProvider",
    "parse_wiki_summary",
    "plan_references",
]


def build_mock_engine(config: ReferenceConfig | None = None,
                      today=None) -> tuple[ReferenceEngine, dict[str, MockProvider]]:
    """Engine wired with the full deterministic mock provider set.

    Image and search chains get two providers each (primary + fallback).
    Returns the engine plus the mocks keyed by provider_id for test hooks.
    """
    config = config or ReferenceConfig()
    engine = ReferenceEngine(config)
    mocks: dict[str, MockProvider] = {}

    def add(kind: ReferenceKind, suffix: str, priority: int) -> None:
        provider = MockProvider(kind, provider_id=f"mock-{suffix}",
                                fixture_dir=config.fixture_dir,
                                timeout_s=config.provider_timeout_s)
        engine.register_provider(kind, provider, priority)
        mocks[provider.provider_id] = provider

    add(ReferenceKind.IMAGE_SET, "images-a", 0)
    add(ReferenceKind.IMAGE_SET, "images-b", 1)
    add(ReferenceKind.SEARCH_RESULTS, "search-a", 0)
    add(ReferenceKind.SEARCH_RESULTS, "search-b", 1)
    add(ReferenceKind.NEWS, "news", 0)
    add(ReferenceKind.MAP, "map", 0)
    add(ReferenceKind.WEATHER, "weather", 0)
    add(ReferenceKind.WIKI_SNIPPET, "wiki", 0)
    engine.register_provider(ReferenceKind.CALENDAR, CalendarLocalProvider(today=today), 0)
    return engine, mocks
