"""JSON config file shared by `serve` and the other subcommands.

Three optional top-level sections: "server", "extraction", "references".
Unknown keys are rejected to catch typos early; CLI flags override file
values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigInvalidError
from .hub.server import HubConfig
from .nlp.extract import ExtractionParams
from .references.engine import ReferenceConfig

DEFAULT_IDLE_TIMEOUT_S = 5.0


@dataclass
class AppConfig:
    hub: HubConfig = field(default_factory=HubConfig)
    extraction: ExtractionParams = field(default_factory=ExtractionParams)
    references: ReferenceConfig = field(default_factory=ReferenceConfig)
    idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S
    live_wikipedia: bool = False


_SERVER_KEYS = {"bind", "buffer_bound", "handshake_timeout_s", "heartbeat_interval_s",
                "heartbeat_max_missed", "create_on_join", "shared_selection", "session_log"}
_EXTRACTION_KEYS = {"language", "damping", "window", "epsilon", "max_iter",
                    "stopword_path", "lexicon_path", "gazetteer_path", "idle_timeout_s"}
_REFERENCE_KEYS = {"provider_timeout_ms", "chain_budget_ms", "cache_capacity", "ttl_s",
                   "weather_ttl_s", "unavailable_ttl_s", "prefetch_workers", "fixture_dir",
                   "live_wikipedia"}


def parse_bind(bind: str) -> tuple[str, int]:
    host, sep, port = bind.rpartition(":")
    if not sep or not port.isdigit():
        raise ConfigInvalidError(f"bind must look like host:port, got {bind!r}")
    return host or "127.0.0.1", int(port)


def _check_keys(section: dict, allowed: set[str], name: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigInvalidError(f"unknown {name} config keys: {sorted(unknown)}")


def load_app_config(path: Path | None = None) -> AppConfig:
    config = AppConfig()
    if path is None:
        return config
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigInvalidError(f"cannot read config file: {exc}") from exc
    except ValueError as exc:
        raise ConfigInvalidError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigInvalidError("config file must hold a JSON object")
    _check_keys(data, {"server", "extraction", "references"}, "top-level")

    server = data.get("server", {})
    _check_keys(server, _SERVER_KEYS, "server")
    hub_kwargs = {}
    if "bind" in server:
        hub_kwargs["bind_host"], hub_kwargs["bind_port"] = parse_bind(server["bind"])
    for key, attr in (("buffer_bound", "buffer_bound"),
                      ("handshake_timeout_s", "handshake_timeout_s"),
                      ("heartbeat_interval_s", "heartbeat_interval_s"),
                      ("heartbeat_max_missed", "heartbeat_max_missed"),
                      ("create_on_join", "create_on_join"),
                      ("shared_selection", "shared_selection")):
        if key in server:
            hub_kwargs[attr] = server[key]
    if server.get("session_log"):
        hub_kwargs["session_log_path"] = Path(server["session_log"])
    config.hub = HubConfig(**hub_kwargs)

    extraction = data.get("extraction", {})
    _check_keys(extraction, _EXTRACTION_KEYS, "extraction")
    config.idle_timeout_s = float(extraction.get("idle_timeout_s", DEFAULT_IDLE_TIMEOUT_S))
    ex_kwargs = {}
    for key in ("language", "damping", "window", "epsilon", "max_iter"):
        if key in extraction:
            ex_kwargs[key] = extraction[key]
    for key in ("stopword_path", "lexicon_path", "gazetteer_path"):
        if extraction.get(key):
            ex_kwargs[key] = Path(extraction[key])
    config.extraction = ExtractionParams(**ex_kwargs)

    references = data.get("references", {})
    _check_keys(references, _REFERENCE_KEYS, "references")
    config.live_wikipedia = bool(references.get("live_wikipedia", False))
    ref_kwargs = {}
    if "provider_timeout_ms" in references:
        ref_kwargs["provider_timeout_s"] = references["provider_timeout_ms"] / 1000.0
    if "chain_budget_ms" in references:
        ref_kwargs["chain_budget_s"] = references["chain_budget_ms"] / 1000.0
    for key in ("cache_capacity", "ttl_s", "weather_ttl_s", "unavailable_ttl_s",
                "prefetch_workers"):
        if key in references:
            ref_kwargs[key] = references[key]
    if references.get("fixture_dir"):
        ref_kwargs["fixture_dir"] = Path(references["fixture_dir"])
    config.references = ReferenceConfig(**ref_kwargs)
    return config
