"""Web search providers, source filtering, and evidence-text extraction."""

from __future__ import annotations

import hashlib
import html.parser
import json
import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol, Sequence
from urllib.parse import urlsplit

import requests

from .errors import FixtureMissError, PayloadParseError, TransportError

logger = logging.getLogger(__name__)

SNIPPET_ONLY = "snippet-only"
FULL_PAGE = "full-page"


@dataclass(frozen=True)
class SearchResult:
    title: str
    url: str
    snippet: str
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")

    def to_dict(self) -> dict:
        return {"title": self.title, "url": self.url, "snippet": self.snippet, "rank": self.rank}


@dataclass(frozen=True)
class EvidenceText:
    source_url: str
    text: str
    mode: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("evidence text must be non-empty")
        if self.mode not in (SNIPPET_ONLY, FULL_PAGE):
            raise ValueError(f"bad evidence mode {self.mode!r}")


# --------------------------------------------------------------------------
# Blacklist


@dataclass(frozen=True)
class Blacklist:
    domains: frozenset[str]
    source_path: str = ""

    def __len__(self) -> int:
        return len(self.domains)

    def matches(self, host: str | None) -> bool:
        """True when ``host`` is a listed domain or one of its subdomains."""
        if not host:
            return False
        host = host.lower().rstrip(".")
        for domain in self.domains:
            if host == domain or host.endswith("." + domain):
                return True
        return False


def load_blacklist(path: str | Path) -> Blacklist:
    """One domain per line; '#' comments and blank lines are skipped.

    Entries are trimmed, lowercased, and deduplicated. A file with no
    valid entries yields an empty blacklist with a warning.
    """
    entries: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        entries.add(stripped.lower())
    if not entries:
        logger.warning("blacklist file %s has no valid entries", path)
    return Blacklist(domains=frozenset(entries), source_path=str(path))


def _hostname(url: str) -> str | None:
    try:
        return urlsplit(url).hostname
    except ValueError:
        return None


def filter_sources(results: Sequence[SearchResult], blacklist: Blacklist) -> list[SearchResult]:
    """Remove results whose host falls under a blacklisted domain.

    Order is preserved and a result with an unparseable URL is dropped
    (fail closed).
    """
    kept = []
    for result in results:
        host = _hostname(result.url)
        if host is None:
            logger.debug("dropping result with unparseable URL: %r", result.url)
            continue
        if blacklist.matches(host):
            continue
        kept.append(result)
    return kept


# --------------------------------------------------------------------------
# Evidence extraction


class _VisibleText(html.parser.HTMLParser):
    _SKIP = {"script", "style", "noscript", "template"}

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self._chunks: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in self._SKIP:
            self._skip_depth += 1

    def handle_endtag(self, tag):
        if tag in self._SKIP and self._skip_depth > 0:
            self._skip_depth -= 1

    def handle_data(self, data):
        if self._skip_depth == 0:
            self._chunks.append(data)

    def text(self) -> str:
        return " ".join(" ".join(self._chunks).split())


def visible_text(html_doc: str) -> str:
    parser = _VisibleText()
    parser.feed(html_doc)
    return parser.text()


PageFetcher = Callable[[str], str]


def default_page_fetcher(url: str, timeout: float = 10.0) -> str:
    response = requests.get(url, timeout=timeout)
    response.raise_for_status()
    return response.text


def extract_relevant_text(
    result: SearchResult,
    mode: str = SNIPPET_ONLY,
    *,
    fetcher: PageFetcher | None = None,
    char_budget: int = 8000,
) -> EvidenceText:
    """Turn a search result into the text passed to judging.

    Snippet-only joins title and snippet. Full-page fetches the URL,
    reduces it to visible text, and truncates to the character budget;
    any fetch or parse failure falls back to the snippet-only output.
    """
    parts = [p for p in (result.title, result.snippet) if p]
    snippet_text = " — ".join(parts) or result.url
    if mode == SNIPPET_ONLY:
        return EvidenceText(source_url=result.url, text=snippet_text, mode=SNIPPET_ONLY)

    fetch = fetcher or default_page_fetcher
    try:
        page = fetch(result.url)
        text = visible_text(page)[:char_budget]
    except Exception as exc:
        logger.debug("full-page fetch failed for %s (%s); using snippet", result.url, exc)
        text = ""
    if not text:
        return EvidenceText(source_url=result.url, text=snippet_text, mode=SNIPPET_ONLY)
    return EvidenceText(source_url=result.url, text=text, mode=FULL_PAGE)


# --------------------------------------------------------------------------
# Search providers


class SearchProvider(Protocol):
    def search(self, query: str, top_k: int) -> list[SearchResult]: ...


def search_request_key(query: str, top_k: int) -> str:
    canonical = json.dumps({"query": query, "top_k": top_k}, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class LiveSearchProvider:
    """Custom-search style HTTP JSON endpoint; key read from the environment."""

    def __init__(self, endpoint: str, api_key: str, engine_id: str = "", timeout: float = 10.0):
        self.endpoint = endpoint
        self.api_key = api_key
        self.engine_id = engine_id
        self.timeout = timeout

    def search(self, query: str, top_k: int) -> list[SearchResult]:
        if top_k < 1:
            raise ValueError("top_k must be >= 1")
        params = {"key": self.api_key, "q": query, "num": top_k}
        if self.engine_id:
            params["cx"] = self.engine_id
        last_exc = None
        for _ in range(2):  # one retry on transport failure
            try:
                response = requests.get(self.endpoint, params=params, timeout=self.timeout)
                if response.status_code >= 500 or response.status_code == 429:
                    last_exc = TransportError(f"search endpoint returned {response.status_code}")
                    continue
                response.raise_for_status()
                return _parse_search_payload(response.json(), top_k)
            except requests.RequestException as exc:
                last_exc = exc
        raise TransportError(f"search request failed: {last_exc}")


def _parse_search_payload(payload, top_k: int) -> list[SearchResult]:
    if not isinstance(payload, dict) or not isinstance(payload.get("items", []), list):
        raise PayloadParseError("malformed search response", raw=repr(payload)[:500])
    results = []
    for i, item in enumerate(payload.get("items", [])[:top_k], start=1):
        try:
            results.append(
                SearchResult(
                    title=item.get("title", ""),
                    url=item["link"],
                    snippet=item.get("snippet", ""),
                    rank=i,
                )
            )
        except (KeyError, TypeError) as exc:
            raise PayloadParseError(f"malformed search item: {exc}", raw=repr(item)[:500])
    return results


class ReplaySearchProvider:
    """Serves recorded searches from a line-delimited JSON fixture file.

    Records look like {"request_key", "query", "top_k", "results": [...]}.
    Strict mode raises on an unknown key; non-strict returns no results.
    """

    def __init__(self, records: dict[str, list[SearchResult]], strict: bool = True):
        self._records = records
        self.strict = strict

    @classmethod
    def load(cls, path: str | Path, strict: bool = True) -> "ReplaySearchProvider":
        records: dict[str, list[SearchResult]] = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            doc = json.loads(line)
            key = doc["request_key"]
            results = [SearchResult(**r) for r in doc["results"]]
            if key in records and [r.to_dict() for r in records[key]] != doc["results"]:
                raise ValueError(f"conflicting search fixtures for key {key}")
            records[key] = results
        return cls(records, strict=strict)

    def search(self, query: str, top_k: int) -> list[SearchResult]:
        key = search_request_key(query, top_k)
        if key not in self._records:
            if self.strict:
                raise FixtureMissError(key, kind="search")
            return []
        return [r for r in self._records[key]][:top_k]


class RecordingSearchProvider:
    """Wraps a provider and appends every response to a fixture file."""

    def __init__(self, inner: SearchProvider, path: str | Path):
        self._inner = inner
        self._path = Path(path)
        self._lock = threading.Lock()

    def search(self, query: str, top_k: int) -> list[SearchResult]:
        results = self._inner.search(query, top_k)
        record = {
            "request_key": search_request_key(query, top_k),
            "query": query,
            "top_k": top_k,
            "results": [r.to_dict() for r in results],
        }
        with self._lock:
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        return results
