"""Operator command line: serve the hub, replay scripted conversations against
it, run one-shot extraction, or benchmark the pipeline.

Exit codes: 0 success, 2 input error, 3 connectivity error. stdout carries
only payload; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import dataclasses
import json
import logging
import sys
import threading
from pathlib import Path

from . import __version__
from .bench import run_bench
from .config import AppConfig, load_app_config, parse_bind
from .errors import EngineError
from .hub import protocol
from .hub.server import HubConfig, RealtimeHub, run_hub
from .ingest import (
    DEFAULT_SESSION_ID,
    ConversationCore,
    SessionConfig,
    iter_script_segments,
    load_script,
)
from .nlp.extract import ExtractionParams, KeywordExtractor
from .references import ReferenceKind, WikipediaLiveProvider, build_mock_engine

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONNECT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convref",
        description="Real-time augmented-conversation engine.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the realtime hub")
    serve.add_argument("--config", type=Path, default=None, help="JSON config file")
    serve.add_argument("--bind", default=None, help="host:port (overrides config)")
    serve.add_argument("--fixture-dir", type=Path, default=None,
                       help="provider fixture directory")
    serve.add_argument("--session-log", type=Path, default=None,
                       help="append broadcast frames to this JSON-lines file")
    serve.add_argument("--stdin", action="store_true",
                       help="treat each stdin line as a final segment for the "
                            f"'{DEFAULT_SESSION_ID}' session")

    replay = sub.add_parser("replay", help="stream a script file to a running hub")
    replay.add_argument("script", type=Path)
    replay.add_argument("--server", default="ws://127.0.0.1:8765",
                        help="hub URL (path /ws is implied)")
    replay.add_argument("--session", default=DEFAULT_SESSION_ID)
    replay.add_argument("--wpm", type=float, default=110.0, help="word rate")
    replay.add_argument("--updates-per-min", type=float, default=360.0,
                        help="segment emission rate")
    replay.add_argument("--max-segments", type=int, default=None)
    replay.add_argument("--output", choices=("json", "text"), default="text")

    extract = sub.add_parser("extract", help="one-shot keyword extraction")
    extract.add_argument("input", help="text file, one segment per line ('-' for stdin)")
    _add_extraction_flags(extract)

    bench = sub.add_parser("bench", help="throughput/latency benchmark")
    bench.add_argument("corpus", type=Path)
    bench.add_argument("--output", choices=("json", "text"), default="text")
    _add_extraction_flags(bench)
    return parser


def _add_extraction_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--damping", type=float, default=None)
    parser.add_argument("--window", type=int, default=None)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--stopwords", type=Path, default=None, dest="stopword_path")
    parser.add_argument("--lexicon", type=Path, default=None, dest="lexicon_path")
    parser.add_argument("--gazetteer", type=Path, default=None, dest="gazetteer_path")


def _params_from_args(args, base: ExtractionParams | None = None) -> ExtractionParams:
    params = base or ExtractionParams()
    overrides = {}
    for name in ("damping", "window", "epsilon", "stopword_path",
                 "lexicon_path", "gazetteer_path"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "max_iter", None) is not None:
        overrides["max_iter"] = args.max_iter
    return dataclasses.replace(params, **overrides)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(args)
        if args.command == "replay":
            return cmd_replay(args)
        if args.command == "extract":
            return cmd_extract(args)
        if args.command == "bench":
            return cmd_bench(args)
    except EngineError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return EXIT_INPUT
    raise AssertionError("unreachable")


# -- serve --


def build_stack(config: AppConfig):
    """Wire extractor + reference engine + core + hub from one config."""
    engine, _ = build_mock_engine(config.references)
    if config.live_wikipedia:
        engine.register_provider(ReferenceKind.WIKI_SNIPPET, WikipediaLiveProvider(), -1)
    extractor = KeywordExtractor(config.extraction)
    core = ConversationCore(extractor=extractor, references=engine)
    hub = RealtimeHub(core, config.hub)
    return core, engine, hub


def cmd_serve(args) -> int:
    try:
        config = load_app_config(args.config)
    except EngineError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return EXIT_INPUT
    hub_kwargs = dataclasses.asdict(config.hub)
    if args.bind:
        hub_kwargs["bind_host"], hub_kwargs["bind_port"] = parse_bind(args.bind)
    if args.session_log:
        hub_kwargs["session_log_path"] = args.session_log
    config.hub = HubConfig(**hub_kwargs)
    if args.fixture_dir:
        config.references = dataclasses.replace(config.references,
                                                fixture_dir=args.fixture_dir)
    core, engine, hub = build_stack(config)

    async def _serve() -> int:
        if args.stdin:
            core.open_session(SessionConfig(session_id=DEFAULT_SESSION_ID,
                                            idle_timeout_s=config.idle_timeout_s))
            _start_stdin_pump(core, asyncio.get_running_loop())
        try:
            await run_hub(hub)
        except OSError as exc:
            print(f"error: cannot bind "
                  f"{config.hub.bind_host}:{config.hub.bind_port}: {exc}", file=sys.stderr)
            return EXIT_CONNECT
        return EXIT_OK

    try:
        return asyncio.run(_serve())
    except KeyboardInterrupt:
        return EXIT_OK
    finally:
        engine.close()


def _start_stdin_pump(core: ConversationCore, loop: asyncio.AbstractEventLoop) -> None:
    def pump() -> None:
        for raw in sys.stdin:
            line = raw.strip()
            if not line:
                continue
            loop.call_soon_threadsafe(_push_quietly, core, line)

    threading.Thread(target=pump, name="stdin-pump", daemon=True).start()


def _push_quietly(core: ConversationCore, line: str) -> None:
    try:
        core.push_segment(DEFAULT_SESSION_ID, line, True)
    except EngineError as exc:
        print(f"stdin segment rejected: {exc.code}", file=sys.stderr)


# -- replay --


def cmd_replay(args) -> int:
    try:
        utterances = load_script(args.script)
    except OSError as exc:
        print(f"error: cannot read script: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.wpm <= 0 or args.updates_per_min <= 0:
        print("error: CONFIG_INVALID: rates must be positive", file=sys.stderr)
        return EXIT_INPUT
    url = args.server.rstrip("/")
    if not url.endswith("/ws"):
        url += "/ws"
    try:
        summary = asyncio.run(_replay_session(
            url, args.session, utterances, args.wpm, args.updates_per_min,
            args.max_segments))
    except ConnectionError as exc:
        print(f"error: cannot connect to {url}: {exc}", file=sys.stderr)
        return EXIT_CONNECT
    if args.output == "json":
        print(json.dumps(summary))
    else:
        print(f"segments_sent      {summary['segments_sent']}")
        print(f"elapsed_s          {summary['elapsed_s']:.1f}")
        print(f"segments_per_min   {summary['segments_per_min']:.1f}")
        print(f"keywords_observed  {summary['keywords_observed']}")
    return EXIT_OK


async def _replay_session(url: str, session_id: str, utterances: list[str],
                          wpm: float, upm: float,
                          max_segments: int | None) -> dict:
    from websockets.asyncio.client import connect
    from websockets.exceptions import WebSocketException

    try:
        ws = await connect(url, ping_interval=None)
    except (OSError, WebSocketException, asyncio.TimeoutError) as exc:
        raise ConnectionError(str(exc)) from exc

    keywords_seen: set[str] = set()

    async def reader() -> None:
        try:
            async for frame in ws:
                try:
                    message = protocol.decode(frame)
                except EngineError:
                    continue
                if isinstance(message, protocol.KeywordsUpdate):
                    for kw in message.keywords:
                        keywords_seen.add(kw["id"])
                elif isinstance(message, protocol.Ping):
                    await ws.send(protocol.encode(protocol.Pong(
                        session_id=session_id, nonce=message.nonce,
                        sent_at_ms=message.sent_at_ms)))
        except Exception:
            pass

    await ws.send(protocol.encode(protocol.SessionHello(
        session_id=session_id, role=protocol.ROLE_SPEAKER)))
    reader_task = asyncio.get_running_loop().create_task(reader())

    sent = 0
    loop = asyncio.get_running_loop()
    started = loop.time()
    for segment in iter_script_segments(utterances, wpm, upm):
        if max_segments is not None and sent >= max_segments:
            break
        delay = started + segment.at_s - loop.time()
        if delay > 0:
            await asyncio.sleep(delay)
        await ws.send(protocol.encode(protocol.TranscriptUpdate(
            session_id=session_id, seq=sent, text=segment.text,
            is_final=segment.is_final)))
        sent += 1
    elapsed = loop.time() - started
    await asyncio.sleep(0.2)  # let trailing keyword updates arrive
    reader_task.cancel()
    await ws.close()
    return {
        "schema": 1,
        "segments_sent": sent,
        "elapsed_s": elapsed,
        "segments_per_min": sent / elapsed * 60.0 if elapsed > 0 else 0.0,
        "keywords_observed": len(keywords_seen),
    }


# -- extract --


def cmd_extract(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        path = Path(args.input)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot read input: {exc}", file=sys.stderr)
            return EXIT_INPUT
    extractor = KeywordExtractor(_params_from_args(args))
    emitted: set[str] = set()
    results = []
    counter = iter(range(10 ** 9))
    seq = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        results.extend(
            kw.to_json()
            for kw in extractor.extract_keywords(
                line, emitted, seq, lambda: f"extract:k{next(counter)}"))
        seq += 1
    print(json.dumps(results, indent=2, ensure_ascii=False))
    return EXIT_OK


# -- bench --


def cmd_bench(args) -> int:
    try:
        report = run_bench(args.corpus, _params_from_args(args))
    except OSError as exc:
        print(f"error: cannot read corpus: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output == "json":
        print(json.dumps(report.to_json()))
    else:
        print(report.to_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
