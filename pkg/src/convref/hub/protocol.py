"""JSON wire protocol between hub and clients.

Every frame is one JSON object with a `type` tag and a `session_id`. Frames
sent by the server additionally carry `delivery_index`, a per-connection
strictly increasing counter. Unknown `type` values are rejected with an error
frame; unknown extra fields inside a known frame are ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..errors import BadMessageError

ROLE_SPEAKER = "speaker"
ROLE_VIEWER = "viewer"


@dataclass(frozen=True)
class SessionHello:
    session_id: str
    role: str
    server_time_ms: float | None = None
    type: str = field(default="session_hello", init=False)


@dataclass(frozen=True)
class TranscriptUpdate:
    session_id: str
    seq: int
    text: str
    is_final: bool
    type: str = field(default="transcript_update", init=False)


@dataclass(frozen=True)
class KeywordsUpdate:
    session_id: str
    seq: int
    keywords: tuple[dict, ...]  # {id, phrase, category, score, color_code}
    type: str = field(default="keywords_update", init=False)


@dataclass(frozen=True)
class SelectKeyword:
    session_id: str
    keyword_id: str
    kind: str | None = None
    type: str = field(default="select_keyword", init=False)


@dataclass(frozen=True)
class ReferenceReady:
    session_id: str
    keyword_id: str
    kind: str
    bundle: dict
    type: str = field(default="reference_ready", init=False)


@dataclass(frozen=True)
class ErrorMsg:
    session_id: str
    code: str
    detail: str = ""
    type: str = field(default="error", init=False)


@dataclass(frozen=True)
class Ping:
    session_id: str
    nonce: str
    sent_at_ms: float
    type: str = field(default="ping", init=False)


@dataclass(frozen=True)
class Pong:
    session_id: str
    nonce: str
    sent_at_ms: float
    type: str = field(default="pong", init=False)


WireMessage = (SessionHello | TranscriptUpdate | KeywordsUpdate | SelectKeyword
               | ReferenceReady | ErrorMsg | Ping | Pong)

# type tag -> (class, required wire fields, optional wire fields)
_SCHEMA: dict[str, tuple[type, tuple[str, ...], tuple[str, ...]]] = {
    "session_hello": (SessionHello, ("session_id", "role"), ("server_time_ms",)),
    "transcript_update": (TranscriptUpdate, ("session_id", "seq", "text", "is_final"), ()),
    "keywords_update": (KeywordsUpdate, ("session_id", "seq", "keywords"), ()),
    "select_keyword": (SelectKeyword, ("session_id", "keyword_id"), ("kind",)),
    "reference_ready": (ReferenceReady, ("session_id", "keyword_id", "kind", "bundle"), ()),
    "error": (ErrorMsg, ("session_id", "code"), ("detail",)),
    "ping": (Ping, ("session_id", "nonce", "sent_at_ms"), ()),
    "pong": (Pong, ("session_id", "nonce", "sent_at_ms"), ()),
}


def encode(message: WireMessage, delivery_index: int | None = None) -> str:
    """Serialize a message; `delivery_index` is stamped on server sends."""
    _, required, optional = _SCHEMA[message.type]
    payload: dict[str, Any] = {"type": message.type}
    for name in required + optional:
        value = getattr(message, name)
        if value is None and name in optional:
            continue
        if name == "keywords":
            value = list(value)
        payload[name] = value
    if delivery_index is not None:
        payload["delivery_index"] = delivery_index
    return json.dumps(payload, separators=(",", ":"))


def decode(raw: str | bytes) -> WireMessage:
    """Parse one frame; raises BadMessageError on anything malformed."""
    try:
        data = json.loads(raw)
    except (ValueError, UnicodeDecodeError) as exc:
        raise BadMessageError(f"frame is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BadMessageError("frame must be a JSON object")
    tag = data.get("type")
    if not isinstance(tag, str) or tag not in _SCHEMA:
        raise BadMessageError(f"unknown message type {tag!r}")
    cls, required, optional = _SCHEMA[tag]
    kwargs: dict[str, Any] = {}
    for name in required:
        if name not in data:
            raise BadMessageError(f"{tag} frame missing field {name!r}")
        kwargs[name] = data[name]
    for name in optional:
        if name in data:
            kwargs[name] = data[name]
    if "keywords" in kwargs:
        if not isinstance(kwargs["keywords"], list):
            raise BadMessageError("keywords must be a list")
        kwargs["keywords"] = tuple(kwargs["keywords"])
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise BadMessageError(f"bad {tag} frame: {exc}") from exc


def keyword_wire_fields(keyword) -> dict:
    """The five normative keyword fields carried in KeywordsUpdate frames."""
    return {
        "id": keyword.id,
        "phrase": keyword.phrase,
        "category": keyword.category.value,
        "score": keyword.score,
        "color_code": keyword.color_code,
    }
