"""Engine-wide exceptions. Every error carries a stable machine-readable code
that is also used verbatim on the wire in ErrorMsg frames."""

from __future__ import annotations


class EngineError(Exception):
    """Base class; `code` is the wire-level error identifier."""

    code = "ENGINE_ERROR"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail


class DuplicateSessionError(EngineError):
    code = "DUPLICATE_SESSION"


class SessionNotFoundError(EngineError):
    code = "SESSION_NOT_FOUND"


class EmptySegmentError(EngineError):
    code = "EMPTY_SEGMENT"


class ConfigInvalidError(EngineError):
    code = "CONFIG_INVALID"


class KeywordNotFoundError(EngineError):
    code = "KEYWORD_NOT_FOUND"


class DuplicateProviderError(EngineError):
    code = "DUPLICATE_PROVIDER"


class BadMessageError(EngineError):
    code = "BAD_MESSAGE"
