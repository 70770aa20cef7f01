"""Per-segment latency traces along the ingest -> broadcast-enqueue path."""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from dataclasses import dataclass


@dataclass
class LatencyTrace:
    """Stage timestamps for one segment, monotonic milliseconds.

    Timestamps are non-decreasing in pipeline order; `t_client_echo` stays
    None until a client echoes the segment back.
    """

    seq: int
    t_ingest: float
    t_extract_done: float
    t_broadcast_enqueued: float
    t_client_echo: float | None = None

    def __post_init__(self):
        if not (self.t_ingest <= self.t_extract_done <= self.t_broadcast_enqueued):
            raise ValueError("trace timestamps must be non-decreasing")

    @property
    def span_ms(self) -> float:
        return self.t_broadcast_enqueued - self.t_ingest


def percentile(values: list[float], pct: float) -> float:
    """Nearest-rank percentile: the ceil(pct/100 * n)-th smallest value.

    p50 of [1..10] is 5, p95 is 10; exact and hand-checkable.
    """
    if not values:
        raise ValueError("percentile of empty list")
    ordered = sorted(values)
    rank = max(1, math.ceil(pct / 100.0 * len(ordered)))
    return ordered[min(rank, len(ordered)) - 1]


class TraceLog:
    """Bounded trace store per session; thread-safe."""

    def __init__(self, max_traces: int = 20000):
        self.max_traces = max_traces
        self._traces: OrderedDict[int, LatencyTrace] = OrderedDict()
        self._lock = threading.Lock()

    def add(self, trace: LatencyTrace) -> None:
        with self._lock:
            self._traces[trace.seq] = trace
            while len(self._traces) > self.max_traces:
                self._traces.popitem(last=False)

    def set_client_echo(self, seq: int, t_echo_ms: float) -> bool:
        with self._lock:
            trace = self._traces.get(seq)
            if trace is None:
                return False
            trace.t_client_echo = t_echo_ms
            return True

    def snapshot(self, window: int | None = None) -> list[LatencyTrace]:
        """Most recent `window` traces (all when None), oldest first."""
        with self._lock:
            traces = list(self._traces.values())
        if window is not None:
            traces = traces[-window:]
        return traces

    def stats(self, window: int | None = None) -> dict:
        """Aggregate ingest->broadcast-enqueue spans; {count: 0} when empty."""
        spans = [t.span_ms for t in self.snapshot(window)]
        if not spans:
            return {"count": 0}
        return {
            "count": len(spans),
            "p50_ms": percentile(spans, 50),
            "p95_ms": percentile(spans, 95),
            "max_ms": max(spans),
        }
