"""convref: a real-time augmented-conversation engine.

Streaming transcript segments come in; categorized, ranked keywords and
prefetched visual reference bundles go out to every connected client over a
WebSocket fan-out.
"""

__version__ = "0.1.0"
