"""Shared helpers for hub integration tests: an in-process server stack, a
collecting WebSocket test client, and a thread-hosted server for CLI tests."""

from __future__ import annotations

import asyncio
import contextlib
import threading
from pathlib import Path

from websockets.asyncio.client import connect

from convref.hub import protocol
from convref.hub.server import HubConfig, RealtimeHub, run_hub
from convref.ingest import ConversationCore
from convref.nlp import KeywordExtractor
from convref.references import ReferenceConfig, build_mock_engine

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "src" / "convref" / "data" / "fixtures"

_EXTRACTOR = None


def shared_extractor() -> KeywordExtractor:
    global _EXTRACTOR
    if _EXTRACTOR is None:
        _EXTRACTOR = KeywordExtractor()
    return _EXTRACTOR


@contextlib.asynccontextmanager
async def start_stack(hub_config: HubConfig | None = None,
                      ref_config: ReferenceConfig | None = None,
                      today=None):
    """Run core+engine+hub on an ephemeral loopback port."""
    engine, mocks = build_mock_engine(
        ref_config or ReferenceConfig(fixture_dir=FIXTURE_DIR), today=today)
    core = ConversationCore(extractor=shared_extractor(), references=engine)
    hub = RealtimeHub(core, hub_config or HubConfig(bind_port=0))
    try:
        async with hub.serve() as server:
            port = server.sockets[0].getsockname()[1]
            yield core, engine, mocks, hub, port
    finally:
        engine.close()
        hub.close_log()


class Client:
    """Test client that records every decoded frame in arrival order."""

    def __init__(self, port: int, session_id: str, role: str = protocol.ROLE_VIEWER,
                 auto_pong: bool = True, expect_ack: bool = True):
        self.port = port
        self.session_id = session_id
        self.role = role
        self.auto_pong = auto_pong
        self.expect_ack = expect_ack
        self.messages: list = []
        self.raw_frames: list[str] = []
        self.closed = asyncio.Event()
        self.ws = None
        self._reader = None

    async def __aenter__(self):
        self.ws = await connect(f"ws://127.0.0.1:{self.port}/ws", ping_interval=None)
        await self.ws.send(protocol.encode(protocol.SessionHello(
            session_id=self.session_id, role=self.role)))
        self._reader = asyncio.get_running_loop().create_task(self._read_loop())
        if self.expect_ack:
            # Joining is acked with a SessionHello; wait so the connection is
            # registered in the room before the test broadcasts anything.
            await self.wait_for(lambda c: c.of_type(protocol.SessionHello))
        return self

    async def __aexit__(self, *exc):
        if self._reader:
            self._reader.cancel()
        with contextlib.suppress(Exception):
            await self.ws.close()

    async def _read_loop(self):
        try:
            async for frame in self.ws:
                self.raw_frames.append(frame)
                message = protocol.decode(frame)
                self.messages.append(message)
                if self.auto_pong and isinstance(message, protocol.Ping):
                    await self.ws.send(protocol.encode(protocol.Pong(
                        session_id=self.session_id, nonce=message.nonce,
                        sent_at_ms=message.sent_at_ms)))
        except Exception:
            pass
        finally:
            self.closed.set()

    def of_type(self, cls) -> list:
        return [m for m in self.messages if isinstance(m, cls)]

    async def send(self, message) -> None:
        await self.ws.send(protocol.encode(message))

    async def send_raw(self, frame: str) -> None:
        await self.ws.send(frame)

    async def wait_for(self, predicate, timeout: float = 5.0):
        """Poll until predicate(self) is truthy; returns its value."""
        deadline = asyncio.get_running_loop().time() + timeout
        while True:
            value = predicate(self)
            if value:
                return value
            if asyncio.get_running_loop().time() > deadline:
                raise AssertionError(f"timed out waiting; have {self.messages}")
            await asyncio.sleep(0.01)

    async def wait_closed(self, timeout: float = 5.0) -> None:
        await asyncio.wait_for(self.closed.wait(), timeout)


class ServerThread:
    """Full stack on a background thread with its own event loop; gives the
    main thread a port to point CLI subcommands at."""

    def __init__(self, hub_config: HubConfig | None = None,
                 ref_config: ReferenceConfig | None = None):
        self.hub_config = hub_config or HubConfig(bind_port=0)
        self.ref_config = ref_config or ReferenceConfig(fixture_dir=FIXTURE_DIR)
        self.port: int | None = None
        self.core = None
        self.engine = None
        self.hub = None
        self._ready = threading.Event()
        self._stop: asyncio.Event | None = None
        self._loop: asyncio.AbstractEventLoop | None = None
        self._thread = threading.Thread(target=self._run, daemon=True)

    def _run(self) -> None:
        async def main():
            self.engine, _ = build_mock_engine(self.ref_config)
            self.core = ConversationCore(extractor=shared_extractor(),
                                         references=self.engine)
            self.hub = RealtimeHub(self.core, self.hub_config)
            self._stop = asyncio.Event()
            self._loop = asyncio.get_running_loop()

            def on_ready(port: int) -> None:
                self.port = port
                self._ready.set()

            await run_hub(self.hub, ready=on_ready, stop=self._stop)

        asyncio.run(main())

    def __enter__(self):
        self._thread.start()
        if not self._ready.wait(timeout=10.0):
            raise RuntimeError("server thread did not come up")
        return self

    def __exit__(self, *exc):
        if self._loop is not None and self._stop is not None:
            self._loop.call_soon_threadsafe(self._stop.set)
        self._thread.join(timeout=10.0)
        if self.engine is not None:
            self.engine.close()
