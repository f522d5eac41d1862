"""Builds the service's working parts from an AppConfig.

Provider mode decides where completions and search results come from:
``live`` talks HTTP, ``replay`` serves recorded fixtures, and
``offline-deterministic`` computes everything locally. Replay and
offline deployments make no outbound network calls at all.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from ..clock import FixedClock, SystemClock
from ..community import make_store
from ..config import AppConfig
from ..dispatch import TokenBucket
from ..factfeed import FactFeedClient, FeedCache, FixtureFeedUpstream, LiveFeedUpstream
from ..gateway import Gateway, LiveChatProvider, OfflineProvider, RecordingProvider, ReplayChatProvider
from ..pipeline import Blacklist, VerifierDeps
from ..retrieval import (
    LiveSearchProvider,
    RecordingSearchProvider,
    ReplaySearchProvider,
    SearchResult,
    load_blacklist,
)


class EmptySearchProvider:
    """Deterministic stand-in when no search backend is configured."""

    def search(self, query: str, top_k: int) -> list[SearchResult]:
        return []


def _build_chat_provider(config: AppConfig, environ) -> tuple[object, bool]:
    gw = config.gateway
    healthy = True
    if gw.mode == "live":
        api_key = environ.get(gw.api_key_env, "")
        if not api_key:
            healthy = False
        provider = LiveChatProvider(endpoint=gw.endpoint, api_key=api_key)
    elif gw.mode == "replay":
        provider = ReplayChatProvider.load(gw.replay_path)
    else:
        provider = OfflineProvider()
    if gw.record_path:
        provider = RecordingProvider(provider, gw.record_path)
    return provider, healthy


def _build_search_provider(config: AppConfig, environ) -> tuple[object, bool]:
    sc = config.search
    healthy = True
    if sc.mode == "live":
        api_key = environ.get(sc.api_key_env, "")
        if not api_key:
            healthy = False
        provider = LiveSearchProvider(endpoint=sc.endpoint, api_key=api_key, engine_id=sc.engine_id)
    elif sc.mode == "replay":
        provider = ReplaySearchProvider.load(sc.replay_path)
    else:
        provider = EmptySearchProvider()
    if sc.record_path:
        provider = RecordingSearchProvider(provider, sc.record_path)
    return provider, healthy


def _build_feed(config: AppConfig, environ) -> FeedCache:
    fc = config.feed
    if fc.mode == "live":
        upstream = LiveFeedUpstream(endpoint=fc.endpoint, api_key=environ.get(fc.api_key_env, ""))
    elif fc.fixture_path:
        upstream = FixtureFeedUpstream.load(fc.fixture_path)
    else:
        upstream = FixtureFeedUpstream({"claims": []})
    client = FactFeedClient(upstream, topic=fc.topic)
    return FeedCache(
        lambda: client.fetch_recent(page_size=fc.page_size), ttl_seconds=fc.ttl_seconds
    )


@dataclass
class Runtime:
    config: AppConfig
    verifier_deps: VerifierDeps
    feed_cache: FeedCache
    community: object
    provider_mode: str
    healthy: bool


def build_runtime(config: AppConfig, environ=None) -> Runtime:
    environ = os.environ if environ is None else environ
    chat_provider, chat_ok = _build_chat_provider(config, environ)
    search_provider, search_ok = _build_search_provider(config, environ)

    if config.search.blacklist_path:
        blacklist = load_blacklist(config.search.blacklist_path)
    else:
        blacklist = Blacklist(domains=frozenset())

    dispatch = config.dispatch
    limiter = TokenBucket(dispatch.rate, dispatch.window_ms / 1000.0, SystemClock())
    timer = SystemClock() if config.gateway.mode == "live" else FixedClock()
    deps = VerifierDeps(
        gateway=Gateway(chat_provider, model=config.gateway.model),
        search=search_provider,
        blacklist=blacklist,
        limiter=limiter,
        clock=SystemClock(),
        timer=timer,
    )
    return Runtime(
        config=config,
        verifier_deps=deps,
        feed_cache=_build_feed(config, environ),
        community=make_store(config.community.store, config.community.db_path),
        provider_mode=config.gateway.mode,
        healthy=chat_ok and search_ok,
    )
