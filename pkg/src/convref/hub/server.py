"""WebSocket fan-out hub.

One process hosts many sessions; every connection joins exactly one session's
broadcast group after a SessionHello handshake. Outbound frames flow through a
bounded per-connection queue drained by a dedicated writer task, so a slow
consumer can only stall itself: when its queue overflows it is disconnected
(close code 4001) while delivery to the rest of the room continues untouched.
"""

from __future__ import annotations

import asyncio
import json
import logging
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Awaitable, Callable

from websockets.asyncio.server import ServerConnection, serve
from websockets.exceptions import ConnectionClosed

from ..errors import BadMessageError, EngineError, KeywordNotFoundError, SessionNotFoundError
from ..ingest import ConversationCore, SessionConfig
from ..references.kinds import ReferenceKind
from ..textnorm import now_ms
from . import protocol

logger = logging.getLogger(__name__)

CLOSE_HANDSHAKE_TIMEOUT = 4000
CLOSE_SLOW_CONSUMER = 4001
CLOSE_PROTOCOL_VIOLATION = 4002

_SEGMENT_ECHO_PREFIX = "seg:"


@dataclass(frozen=True)
class HubConfig:
    bind_host: str = "127.0.0.1"
    bind_port: int = 8765
    buffer_bound: int = 256
    handshake_timeout_s: float = 5.0
    heartbeat_interval_s: float = 15.0
    heartbeat_max_missed: int = 2
    create_on_join: bool = True
    shared_selection: bool = True
    session_log_path: Path | None = None


@dataclass
class ClientConnection:
    ws: ServerConnection
    session_id: str
    role: str
    queue: asyncio.Queue = field(repr=False, default_factory=asyncio.Queue)
    delivery_index: int = 0
    missed_pongs: int = 0
    queue_high_water: int = 0
    dropped: bool = False
    writer: asyncio.Task | None = field(default=None, repr=False)
    heartbeat: asyncio.Task | None = field(default=None, repr=False)


class RealtimeHub:
    """Owns the rooms and the broadcast path; all state lives on the loop thread."""

    def __init__(self, core: ConversationCore, config: HubConfig | None = None):
        self.core = core
        self.config = config or HubConfig()
        self.rooms: dict[str, list[ClientConnection]] = {}
        self.max_queue_depth = 0
        self._session_log = None
        if self.config.session_log_path is not None:
            self._session_log = open(self.config.session_log_path, "a", encoding="utf-8")
        core.broadcast = self.broadcast

    # -- broadcast --

    def broadcast(self, session_id: str, message: protocol.WireMessage) -> int:
        """Enqueue a frame to every live connection of a session.

        Per-connection ordering is preserved (single queue per connection,
        index assigned at enqueue). Returns the number of connections the
        frame was queued for; overflowing consumers are dropped.
        """
        delivered = 0
        room = self.rooms.get(session_id)
        if self._session_log is not None:
            self._session_log.write(protocol.encode(message) + "\n")
            self._session_log.flush()
        if not room:
            return 0
        for conn in list(room):
            if conn.dropped:
                continue
            frame = protocol.encode(message, delivery_index=conn.delivery_index)
            try:
                conn.queue.put_nowait(frame)
            except asyncio.QueueFull:
                self._drop_slow_consumer(conn)
                continue
            conn.delivery_index += 1
            depth = conn.queue.qsize()
            if depth > conn.queue_high_water:
                conn.queue_high_water = depth
            if depth > self.max_queue_depth:
                self.max_queue_depth = depth
            delivered += 1
        return delivered

    def send_to(self, conn: ClientConnection, message: protocol.WireMessage) -> bool:
        """Queue a frame for a single connection."""
        if conn.dropped:
            return False
        frame = protocol.encode(message, delivery_index=conn.delivery_index)
        try:
            conn.queue.put_nowait(frame)
        except asyncio.QueueFull:
            self._drop_slow_consumer(conn)
            return False
        conn.delivery_index += 1
        return True

    def _drop_slow_consumer(self, conn: ClientConnection) -> None:
        if conn.dropped:
            return
        conn.dropped = True
        self._leave(conn)
        logger.warning("dropping slow consumer in session %s", conn.session_id)
        asyncio.get_running_loop().create_task(
            conn.ws.close(CLOSE_SLOW_CONSUMER, "slow consumer"))

    # -- room membership --

    def _join(self, conn: ClientConnection) -> None:
        self.rooms.setdefault(conn.session_id, []).append(conn)

    def _leave(self, conn: ClientConnection) -> None:
        room = self.rooms.get(conn.session_id)
        if room and conn in room:
            room.remove(conn)
            if not room:
                del self.rooms[conn.session_id]

    def room_size(self, session_id: str) -> int:
        return len(self.rooms.get(session_id, []))

    # -- connection lifecycle --

    async def handle_connection(self, ws: ServerConnection) -> None:
        path = ws.request.path.split("?", 1)[0] if ws.request else ""
        if path != "/ws":
            await ws.close(CLOSE_PROTOCOL_VIOLATION, "unknown endpoint")
            return
        try:
            raw = await asyncio.wait_for(ws.recv(), timeout=self.config.handshake_timeout_s)
        except asyncio.TimeoutError:
            await ws.close(CLOSE_HANDSHAKE_TIMEOUT, "handshake timeout")
            return
        except ConnectionClosed:
            return

        try:
            hello = protocol.decode(raw)
            if not isinstance(hello, protocol.SessionHello):
                raise BadMessageError("first frame must be session_hello")
        except BadMessageError as exc:
            try:
                await ws.send(protocol.encode(protocol.ErrorMsg(
                    session_id="", code=exc.code, detail=exc.detail)))
            except ConnectionClosed:
                return
            await ws.close(CLOSE_PROTOCOL_VIOLATION, "bad handshake")
            return

        session_id = hello.session_id
        if not self.core.has_session(session_id):
            if not self.config.create_on_join:
                await ws.send(protocol.encode(protocol.ErrorMsg(
                    session_id=session_id, code=SessionNotFoundError.code,
                    detail=f"session {session_id!r} does not exist")))
                await ws.close(CLOSE_PROTOCOL_VIOLATION, "unknown session")
                return
            self.core.open_session(SessionConfig(session_id=session_id))

        conn = ClientConnection(
            ws=ws, session_id=session_id, role=hello.role,
            queue=asyncio.Queue(maxsize=self.config.buffer_bound))
        self._join(conn)
        conn.writer = asyncio.get_running_loop().create_task(self._writer_loop(conn))
        if self.config.heartbeat_interval_s > 0:
            conn.heartbeat = asyncio.get_running_loop().create_task(self._heartbeat_loop(conn))
        self.send_to(conn, protocol.SessionHello(
            session_id=session_id, role=hello.role, server_time_ms=now_ms()))

        try:
            async for frame in ws:
                await self._dispatch(conn, frame)
        except ConnectionClosed:
            pass
        finally:
            conn.dropped = True
            self._leave(conn)
            for task in (conn.writer, conn.heartbeat):
                if task is not None:
                    task.cancel()

    async def _writer_loop(self, conn: ClientConnection) -> None:
        try:
            while True:
                frame = await conn.queue.get()
                await conn.ws.send(frame)
        except (ConnectionClosed, asyncio.CancelledError):
            pass

    async def _heartbeat_loop(self, conn: ClientConnection) -> None:
        try:
            while True:
                await asyncio.sleep(self.config.heartbeat_interval_s)
                if conn.missed_pongs >= self.config.heartbeat_max_missed:
                    logger.info("heartbeat lost for session %s, closing", conn.session_id)
                    await conn.ws.close(1011, "heartbeat timeout")
                    return
                conn.missed_pongs += 1
                self.send_to(conn, protocol.Ping(
                    session_id=conn.session_id, nonce=uuid.uuid4().hex, sent_at_ms=now_ms()))
        except asyncio.CancelledError:
            pass

    # -- inbound dispatch --

    async def _dispatch(self, conn: ClientConnection, frame: str | bytes) -> None:
        try:
            message = protocol.decode(frame)
        except BadMessageError as exc:
            self.send_to(conn, protocol.ErrorMsg(
                session_id=conn.session_id, code=exc.code, detail=exc.detail))
            return
        if isinstance(message, protocol.TranscriptUpdate):
            try:
                self.core.push_segment(conn.session_id, message.text, message.is_final)
            except EngineError as exc:
                self.send_to(conn, protocol.ErrorMsg(
                    session_id=conn.session_id, code=exc.code, detail=exc.detail))
        elif isinstance(message, protocol.SelectKeyword):
            await self.handle_select(conn, message)
        elif isinstance(message, protocol.Ping):
            self.send_to(conn, protocol.Pong(
                session_id=conn.session_id, nonce=message.nonce,
                sent_at_ms=message.sent_at_ms))
        elif isinstance(message, protocol.Pong):
            conn.missed_pongs = 0
            if message.nonce.startswith(_SEGMENT_ECHO_PREFIX):
                try:
                    seq = int(message.nonce[len(_SEGMENT_ECHO_PREFIX):])
                except ValueError:
                    return
                session = self.core.get_session(conn.session_id)
                session.traces.set_client_echo(seq, now_ms())
        elif isinstance(message, protocol.SessionHello):
            self.send_to(conn, protocol.ErrorMsg(
                session_id=conn.session_id, code=BadMessageError.code,
                detail="session_hello is only valid as the first frame"))
        else:
            self.send_to(conn, protocol.ErrorMsg(
                session_id=conn.session_id, code=BadMessageError.code,
                detail=f"server does not accept {message.type} frames"))

    async def handle_select(self, conn: ClientConnection, message: protocol.SelectKeyword) -> None:
        """Resolve a keyword selection and share the bundle with the session."""
        session = self.core.get_session(conn.session_id)
        keyword = session.keywords_by_id.get(message.keyword_id)
        if keyword is None:
            self.send_to(conn, protocol.ErrorMsg(
                session_id=conn.session_id, code=KeywordNotFoundError.code,
                detail=f"keyword {message.keyword_id!r} is not in this session"))
            return
        engine = self.core.references
        if engine is None:
            self.send_to(conn, protocol.ErrorMsg(
                session_id=conn.session_id, code="PROVIDERS_UNAVAILABLE",
                detail="no reference engine configured"))
            return
        if message.kind is not None:
            try:
                kind = ReferenceKind(message.kind)
            except ValueError:
                self.send_to(conn, protocol.ErrorMsg(
                    session_id=conn.session_id, code=BadMessageError.code,
                    detail=f"unknown reference kind {message.kind!r}"))
                return
        else:
            kind = engine.plan(keyword)[0]
        # Provider chains may block on timeouts; keep them off the loop.
        bundle = await asyncio.to_thread(engine.resolve, keyword, kind)
        if not bundle.ok:
            self.send_to(conn, protocol.ErrorMsg(
                session_id=conn.session_id, code="PROVIDERS_UNAVAILABLE",
                detail=json.dumps(bundle.payload.get("errors", {}))))
            return
        ready = protocol.ReferenceReady(
            session_id=conn.session_id, keyword_id=keyword.id,
            kind=kind.value, bundle=bundle.to_json())
        if self.config.shared_selection:
            self.broadcast(conn.session_id, ready)
        else:
            self.send_to(conn, ready)

    # -- server --

    def serve(self) -> Awaitable:
        """Async context manager for the listening server (binds immediately)."""
        return serve(self.handle_connection, self.config.bind_host,
                     self.config.bind_port, ping_interval=None)

    def close_log(self) -> None:
        if self._session_log is not None:
            self._session_log.close()
            self._session_log = None


async def run_hub(hub: RealtimeHub,
                  ready: Callable[[int], None] | None = None,
                  stop: asyncio.Event | None = None) -> None:
    """Serve until `stop` is set (or forever)."""
    async with hub.serve() as server:
        port = server.sockets[0].getsockname()[1]
        logger.info("listening on ws://%s:%d/ws", hub.config.bind_host, port)
        if ready is not None:
            ready(port)
        if stop is None:
            await asyncio.Future()
        else:
            await stop.wait()
    hub.close_log()
