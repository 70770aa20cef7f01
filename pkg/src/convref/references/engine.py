"""Reference engine: category-driven planning, background prefetch, and
cache-first resolution over prioritized provider chains.

Only image and search bundles are prefetched; everything else is fetched on
selection. Provider failures never propagate into the conversation path: a
fully failed chain yields an `unavailable` bundle with a short ttl so the next
selection retries.
"""

from __future__ import annotations

import time
from concurrent.futures import Future, ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from ..errors import DuplicateProviderError
from ..nlp.extract import Keyword
from .cache import PrefetchCache
from .kinds import (
    BUNDLE_OK,
    BUNDLE_UNAVAILABLE,
    PREFETCH_KINDS,
    ReferenceBundle,
    ReferenceKind,
    plan_references,
)
from .providers import ProviderAdapter, ProviderFailure

UNAVAILABLE_CODE = "PROVIDERS_UNAVAILABLE"


@dataclass(frozen=True)
class ReferenceConfig:
    provider_timeout_s: float = 2.0
    chain_budget_s: float = 5.0
    cache_capacity: int = 1024
    ttl_s: float = 600.0
    weather_ttl_s: float = 300.0
    unavailable_ttl_s: float = 5.0
    prefetch_workers: int = 4
    fixture_dir: Path | None = None


@dataclass
class PrefetchBatch:
    """Handle over one prefetch sweep; lets callers await cache population."""

    futures: list[Future] = field(default_factory=list)

    def wait(self, timeout: float | None = None) -> None:
        deadline = None if timeout is None else time.monotonic() + timeout
        for fut in self.futures:
            remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
            fut.result(timeout=remaining)

    def done(self) -> bool:
        return all(f.done() for f in self.futures)


BundleListener = Callable[[Keyword, ReferenceKind, ReferenceBundle], None]


class ReferenceEngine:
    def __init__(self, config: ReferenceConfig | None = None,
                 cache: PrefetchCache | None = None,
                 clock=time.monotonic):
        self.config = config or ReferenceConfig()
        self.cache = cache or PrefetchCache(self.config.cache_capacity, clock=clock)
        self._clock = clock
        self._chains: dict[ReferenceKind, list[tuple[int, int, ProviderAdapter]]] = {}
        self._tiebreak = 0
        self._prefetch_pool = ThreadPoolExecutor(
            max_workers=self.config.prefetch_workers, thread_name_prefix="prefetch")
        # Separate pool so per-attempt timeouts never starve prefetch workers.
        self._query_pool = ThreadPoolExecutor(max_workers=32, thread_name_prefix="provider")
        self._listeners: list[BundleListener] = []

    def close(self) -> None:
        self._prefetch_pool.shutdown(wait=False, cancel_futures=True)
        self._query_pool.shutdown(wait=False, cancel_futures=True)

    def add_bundle_listener(self, listener: BundleListener) -> None:
        self._listeners.append(listener)

    # -- provider registry --

    def register_provider(self, kind: ReferenceKind, provider: ProviderAdapter,
                          priority: int = 0) -> None:
        chain = self._chains.setdefault(kind, [])
        if any(p.provider_id == provider.provider_id for _, _, p in chain):
            raise DuplicateProviderError(
                f"provider {provider.provider_id!r} already registered for {kind.value}")
        self._tiebreak += 1
        chain.append((priority, self._tiebreak, provider))
        chain.sort(key=lambda item: (item[0], item[1]))

    def chain_for(self, kind: ReferenceKind) -> list[ProviderAdapter]:
        return [p for _, _, p in self._chains.get(kind, [])]

    # -- planning / prefetch / resolve --

    def plan(self, keyword: Keyword) -> list[ReferenceKind]:
        return plan_references(keyword.category)

    def prefetch(self, keywords: Iterable[Keyword]) -> PrefetchBatch:
        """Queue background fetches for the prefetchable kinds of each keyword.

        Returns immediately; completion lands in the cache (and in registered
        bundle listeners). Never raises for provider trouble.
        """
        batch = PrefetchBatch()
        for keyword in keywords:
            for kind in PREFETCH_KINDS:
                if self.cache.contains_fresh(keyword.normalized, kind):
                    continue
                batch.futures.append(
                    self._prefetch_pool.submit(self._prefetch_one, keyword, kind))
        return batch

    def _prefetch_one(self, keyword: Keyword, kind: ReferenceKind) -> ReferenceBundle:
        bundle = self._fetch_via_chain(keyword, kind)
        bundle = self.cache.get_or_put(keyword.normalized, kind, bundle)
        for listener in self._listeners:
            listener(keyword, kind, bundle)
        return bundle

    def resolve(self, keyword: Keyword, kind: ReferenceKind) -> ReferenceBundle:
        """Cache-first bundle lookup; on miss, walk the provider chain.

        Always returns a bundle; check `bundle.ok` (unavailable bundles carry
        per-provider failure reasons).
        """
        cached = self.cache.get(keyword.normalized, kind)
        if cached is not None:
            return cached
        bundle = self._fetch_via_chain(keyword, kind)
        return self.cache.get_or_put(keyword.normalized, kind, bundle)

    def _fetch_via_chain(self, keyword: Keyword, kind: ReferenceKind) -> ReferenceBundle:
        started = self._clock()
        errors: dict[str, str] = {}
        chain = self.chain_for(kind)
        if not chain:
            errors["-"] = f"no provider registered for {kind.value}"
        for provider in chain:
            elapsed = self._clock() - started
            remaining = self.config.chain_budget_s - elapsed
            if remaining <= 0:
                errors[provider.provider_id] = "chain budget exhausted"
                continue
            timeout = min(getattr(provider, "timeout_s", None) or
                          self.config.provider_timeout_s, remaining)
            future = self._query_pool.submit(provider.query, keyword.phrase, keyword.category)
            try:
                payload = future.result(timeout=timeout)
            except FutureTimeout:
                future.cancel()
                errors[provider.provider_id] = f"timed out after {timeout:.3f}s"
                continue
            except ProviderFailure as exc:
                errors[provider.provider_id] = str(exc)
                continue
            except Exception as exc:
                errors[provider.provider_id] = f"{type(exc).__name__}: {exc}"
                continue
            if isinstance(payload, list) and not payload:
                errors[provider.provider_id] = "empty result list"
                continue
            return ReferenceBundle(
                keyword_id=keyword.id,
                kind=kind,
                payload=payload,
                provider_id=provider.provider_id,
                fetched_at=self._clock(),
                ttl_s=self._ttl_for(kind),
                status=BUNDLE_OK,
            )
        return ReferenceBundle(
            keyword_id=keyword.id,
            kind=kind,
            payload={"code": UNAVAILABLE_CODE, "errors": errors},
            provider_id="",
            fetched_at=self._clock(),
            ttl_s=self.config.unavailable_ttl_s,
            status=BUNDLE_UNAVAILABLE,
        )

    def _ttl_for(self, kind: ReferenceKind) -> float:
        if kind is ReferenceKind.WEATHER:
            return self.config.weather_ttl_s
        return self.config.ttl_s
