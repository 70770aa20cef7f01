"""Realtime WebSocket hub: wire protocol, latency tracing, fan-out server."""

from . import protocol
from .tracing import LatencyTrace, TraceLog, percentile

__all__ = ["LatencyTrace", "TraceLog", "percentile", "protocol"]
