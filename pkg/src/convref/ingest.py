"""Transcript ingest: session bookkeeping and the per-segment pipeline drive.

Every accepted segment runs one extraction pass over the segment text alone
(accumulated conversation text is never re-processed), hands any newly found
keywords to the broadcast sink, stamps a latency trace, and only then queues
reference prefetch so provider trouble can never delay the conversation path.

Intermediate segments carry the cumulative text of the in-flight utterance (a
growing prefix); the session's emitted-keyword set keeps re-runs over longer
prefixes from re-broadcasting phrases.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

from .errors import (
    ConfigInvalidError,
    DuplicateSessionError,
    EmptySegmentError,
    SessionNotFoundError,
)
from .hub import protocol
from .hub.tracing import LatencyTrace, TraceLog
from .nlp.extract import ExtractionParams, Keyword, KeywordExtractor
from .references.engine import ReferenceEngine
from .textnorm import now_ms

DEFAULT_IDLE_TIMEOUT_S = 5.0
DEFAULT_SESSION_ID = "default"

# Broadcast sink: (session_id, message) -> delivered connection count.
BroadcastSink = Callable[[str, protocol.WireMessage], int]


@dataclass(frozen=True)
class TranscriptSegment:
    session_id: str
    seq: int
    text: str
    is_final: bool
    received_at: float  # monotonic ms


@dataclass(frozen=True)
class SessionConfig:
    session_id: str | None = None
    language: str = "en"
    params: ExtractionParams | None = None
    idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S


@dataclass
class SessionState:
    session_id: str
    created_at: float
    idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S
    next_seq: int = 0
    emitted_keywords: set[str] = field(default_factory=set)
    utterance_buffer: str = ""
    keywords_by_id: dict[str, Keyword] = field(default_factory=dict)
    last_segment: TranscriptSegment | None = None
    last_segment_at: float | None = None  # monotonic ms
    traces: TraceLog = field(default_factory=TraceLog)
    extractor: KeywordExtractor | None = None  # session-specific override
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _id_counter: itertools.count = field(default_factory=itertools.count, repr=False)

    def next_keyword_id(self) -> str:
        return f"{self.session_id}:k{next(self._id_counter)}"


class ConversationCore:
    """Sessions plus the extraction/broadcast/prefetch pipeline behind them.

    `broadcast` is injected by the hub (or a recorder in tests); `references`
    may be None for offline extraction runs.
    """

    def __init__(self,
                 extractor: KeywordExtractor | None = None,
                 references: ReferenceEngine | None = None,
                 broadcast: BroadcastSink | None = None,
                 clock: Callable[[], float] = now_ms):
        self.extractor = extractor or KeywordExtractor()
        self.references = references
        self.broadcast = broadcast or (lambda session_id, message: 0)
        self.clock = clock
        self._sessions: dict[str, SessionState] = {}
        self._registry_lock = threading.Lock()

    # -- session registry --

    def open_session(self, config: SessionConfig | None = None) -> SessionState:
        config = config or SessionConfig()
        extractor = None
        if config.params is not None or config.language != "en":
            # A session-specific parameter set gets its own extractor load.
            params = config.params or ExtractionParams()
            if config.language != params.language:
                params = dataclasses.replace(params, language=config.language)
            extractor = KeywordExtractor(params)
        session_id = config.session_id or f"s-{int(time.time() * 1000):x}"
        with self._registry_lock:
            if session_id in self._sessions:
                raise DuplicateSessionError(f"session {session_id!r} already open")
            session = SessionState(
                session_id=session_id,
                created_at=self.clock(),
                idle_timeout_s=config.idle_timeout_s,
                extractor=extractor,
            )
            self._sessions[session_id] = session
        return session

    def get_session(self, session_id: str) -> SessionState:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFoundError(f"session {session_id!r} is not open")
        return session

    def has_session(self, session_id: str) -> bool:
        with self._registry_lock:
            return session_id in self._sessions

    def close_session(self, session_id: str) -> None:
        with self._registry_lock:
            if self._sessions.pop(session_id, None) is None:
                raise SessionNotFoundError(f"session {session_id!r} is not open")

    def session_ids(self) -> list[str]:
        with self._registry_lock:
            return list(self._sessions)

    # -- pipeline --

    def push_segment(self, session_id: str, text: str, is_final: bool) -> int:
        """Ingest one segment; returns its assigned sequence number."""
        session = self.get_session(session_id)
        if not text or not text.strip():
            raise EmptySegmentError("segment text must be non-empty")
        with session.lock:
            t_ingest = self.clock()
            self._maybe_expire_utterance(session, t_ingest)
            seq = session.next_seq
            session.next_seq += 1
            segment = TranscriptSegment(session_id=session_id, seq=seq, text=text,
                                        is_final=is_final, received_at=t_ingest)
            session.last_segment = segment
            session.last_segment_at = t_ingest

            extractor = session.extractor or self.extractor
            keywords = extractor.extract_keywords(
                text, session.emitted_keywords, seq, session.next_keyword_id)
            t_extract_done = self.clock()
            for keyword in keywords:
                session.keywords_by_id[keyword.id] = keyword

            self.broadcast(session_id, protocol.TranscriptUpdate(
                session_id=session_id, seq=seq, text=text, is_final=is_final))
            if keywords:
                self.broadcast(session_id, protocol.KeywordsUpdate(
                    session_id=session_id, seq=seq,
                    keywords=tuple(protocol.keyword_wire_fields(k) for k in keywords)))
            t_broadcast = self.clock()
            session.traces.add(LatencyTrace(
                seq=seq, t_ingest=t_ingest, t_extract_done=t_extract_done,
                t_broadcast_enqueued=t_broadcast))

            session.utterance_buffer = "" if is_final else text

        # Deferred work: never inside the traced span, never blocking ingest.
        if keywords and self.references is not None:
            self.references.prefetch(keywords)
        return seq

    def _maybe_expire_utterance(self, session: SessionState, now: float) -> None:
        """Force-finalize a stalled utterance (real recognition streams stall)."""
        if (session.utterance_buffer
                and session.last_segment_at is not None
                and now - session.last_segment_at > session.idle_timeout_s * 1000.0):
            session.utterance_buffer = ""

    def measure_pipeline_latency(self, session_id: str, window: int | None = None) -> dict:
        return self.get_session(session_id).traces.stats(window)


# -- scripted replay --


@dataclass(frozen=True)
class ScriptSegment:
    at_s: float          # emission offset from replay start
    utterance: int
    text: str
    is_final: bool


@dataclass
class ReplayStats:
    segments: int = 0
    finals: int = 0
    words: int = 0
    elapsed_s: float = 0.0

    @property
    def segments_per_min(self) -> float:
        return self.segments / self.elapsed_s * 60.0 if self.elapsed_s > 0 else 0.0

    @property
    def words_per_min(self) -> float:
        return self.words / self.elapsed_s * 60.0 if self.elapsed_s > 0 else 0.0


def load_script(path: Path) -> list[str]:
    """One utterance per line; blank lines and # comments are skipped."""
    utterances = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        utterances.append(line)
    return utterances


def iter_script_segments(utterances: list[str], rate_wpm: float,
                         updates_per_min: float) -> Iterator[ScriptSegment]:
    """Growing-prefix segments paced to the word and update rates.

    Each utterance of W words takes W/rate_wpm minutes and is spread over
    round(W * updates_per_min / rate_wpm) evenly spaced segments (at least
    one), so the long-run word throughput tracks rate_wpm while the emission
    rate tracks updates_per_min. The last segment of an utterance is final and
    carries the full text; earlier ones carry word prefixes.
    """
    if rate_wpm <= 0 or updates_per_min <= 0:
        raise ConfigInvalidError("rate_wpm and updates_per_min must be positive")
    t = 0.0
    for index, utterance in enumerate(utterances):
        words = utterance.split()
        if not words:
            continue
        duration_s = len(words) / rate_wpm * 60.0
        n_seg = max(1, round(len(words) * updates_per_min / rate_wpm))
        for i in range(1, n_seg + 1):
            prefix = words[: math.ceil(len(words) * i / n_seg)]
            yield ScriptSegment(
                at_s=t + duration_s * i / n_seg,
                utterance=index,
                text=" ".join(prefix),
                is_final=(i == n_seg),
            )
        t += duration_s


def replay_script(core: ConversationCore, session_id: str, path: Path,
                  rate_wpm: float, updates_per_min: float,
                  sleep: Callable[[float], None] = time.sleep,
                  clock: Callable[[], float] = time.monotonic,
                  max_segments: int | None = None) -> ReplayStats:
    """Stream a script file into a session at conversational pace."""
    utterances = load_script(path)
    stats = ReplayStats()
    started = clock()
    for segment in iter_script_segments(utterances, rate_wpm, updates_per_min):
        if max_segments is not None and stats.segments >= max_segments:
            break
        delay = started + segment.at_s - clock()
        if delay > 0:
            sleep(delay)
        core.push_segment(session_id, segment.text, segment.is_final)
        stats.segments += 1
        if segment.is_final:
            stats.finals += 1
            stats.words += len(segment.text.split())
    stats.elapsed_s = clock() - started
    return stats
