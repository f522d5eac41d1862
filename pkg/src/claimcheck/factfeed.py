"""Client for a claims-search fact-check API, with freshness filtering
and a TTL cache for the feed view."""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Protocol

import requests

from .clock import Clock, SystemClock
from .errors import TransportError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactCheckItem:
    claim_text: str
    claimant: str | None
    review_publisher: str
    review_url: str
    rating_text: str
    review_date: datetime

    def to_dict(self) -> dict:
        return {
            "claim_text": self.claim_text,
            "claimant": self.claimant,
            "review_publisher": self.review_publisher,
            "review_url": self.review_url,
            "rating_text": self.rating_text,
            "review_date": self.review_date.isoformat(),
        }


class FeedUpstream(Protocol):
    def fetch(self, query: str, page_size: int) -> dict: ...


class LiveFeedUpstream:
    """Claims-search HTTP endpoint; API key comes from the environment."""

    def __init__(self, endpoint: str, api_key: str, timeout: float = 10.0):
        self.endpoint = endpoint
        self.api_key = api_key
        self.timeout = timeout

    def fetch(self, query: str, page_size: int) -> dict:
        params = {"key": self.api_key, "pageSize": page_size}
        if query:
            params["query"] = query
        last_exc = None
        for _ in range(2):
            try:
                response = requests.get(self.endpoint, params=params, timeout=self.timeout)
                if response.status_code >= 500 or response.status_code == 429:
                    last_exc = TransportError(f"feed endpoint returned {response.status_code}")
                    continue
                response.raise_for_status()
                return response.json()
            except requests.RequestException as exc:
                last_exc = exc
        raise TransportError(f"feed request failed: {last_exc}")


class FixtureFeedUpstream:
    """Serves a canned claims-search response from a JSON file."""

    def __init__(self, payload: dict):
        self._payload = payload

    @classmethod
    def load(cls, path: str | Path) -> "FixtureFeedUpstream":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))

    def fetch(self, query: str, page_size: int) -> dict:
        return self._payload


def _parse_date(raw: str) -> datetime | None:
    try:
        value = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except (ValueError, AttributeError, TypeError):
        return None
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value


def parse_feed_payload(payload: dict, now: datetime | None = None) -> tuple[list[FactCheckItem], int]:
    """Extract well-formed items from a claims-search response.

    Records missing any structural field (claim text, publisher, review
    URL, review date) or dated in the future are dropped and counted.
    """
    now = now or datetime.now(timezone.utc)
    items: list[FactCheckItem] = []
    dropped = 0
    for claim in payload.get("claims", []) or []:
        reviews = claim.get("claimReview") or []
        review = reviews[0] if reviews else {}
        claim_text = claim.get("text")
        publisher = (review.get("publisher") or {}).get("name")
        review_url = review.get("url")
        review_date = _parse_date(review.get("reviewDate"))
        if not claim_text or not publisher or not review_url or review_date is None:
            dropped += 1
            continue
        if review_date > now:
            dropped += 1
            continue
        items.append(
            FactCheckItem(
                claim_text=claim_text,
                claimant=claim.get("claimant"),
                review_publisher=publisher,
                review_url=review_url,
                rating_text=review.get("textualRating", ""),
                review_date=review_date,
            )
        )
    return items, dropped


class FactFeedClient:
    def __init__(self, upstream: FeedUpstream, topic: str = ""):
        self.upstream = upstream
        self.topic = topic
        self.last_dropped = 0

    def fetch_recent(self, query: str | None = None, page_size: int = 20) -> list[FactCheckItem]:
        if page_size < 1:
            raise ValueError("page_size must be >= 1")
        payload = self.upstream.fetch(query if query is not None else self.topic, page_size)
        items, dropped = parse_feed_payload(payload)
        self.last_dropped = dropped
        if dropped:
            logger.info("dropped %d structurally inconsistent feed records", dropped)
        return items[:page_size]


def filter_fresh(
    items: list[FactCheckItem], max_age: timedelta | None, now: datetime
) -> list[FactCheckItem]:
    """Keep items whose review age at ``now`` is within ``max_age``.

    ``None`` means no age limit.
    """
    if max_age is None:
        return list(items)
    return [item for item in items if now - item.review_date <= max_age]


FetchFn = Callable[[], list[FactCheckItem]]


class FeedCache:
    """TTL cache over a fetch function.

    Concurrent refreshes coalesce into one upstream call; when a refresh
    fails and a warm copy exists, the stale copy is served with a flag.
    """

    def __init__(self, fetch: FetchFn, ttl_seconds: float, clock: Clock | None = None):
        self._fetch = fetch
        self._ttl = ttl_seconds
        self._clock = clock or SystemClock()
        self._lock = threading.Lock()
        self._items: list[FactCheckItem] | None = None
        self._fetched_at = float("-inf")

    def get(self) -> tuple[list[FactCheckItem], bool]:
        """Return (items, stale_flag)."""
        with self._lock:
            now = self._clock.monotonic()
            if self._items is not None and now - self._fetched_at <= self._ttl:
                return list(self._items), False
            try:
                items = self._fetch()
            except Exception as exc:
                logger.warning("feed refresh failed: %s", exc)
                if self._items is not None:
                    return list(self._items), True
                return [], True
            self._items = items
            self._fetched_at = now
            return list(items), False
