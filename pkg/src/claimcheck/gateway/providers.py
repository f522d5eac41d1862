"""Chat-completion providers: live HTTP, deterministic replay, recording.

Every call is identified by a request key hashed from (kind, model,
slot values), which is what makes record-and-replay exact: a live run
recorded to transcripts replays bit-identically from those transcripts.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import requests

from ..errors import FixtureMissError, PayloadParseError, TransportError
from .prompts import PromptKind
from .types import ProviderTranscript


def request_key(kind: PromptKind, model: str, slots: dict[str, str]) -> str:
    canonical = json.dumps(
        {"kind": kind.value, "model": model, "slots": slots},
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ProviderRequest:
    kind: PromptKind
    model: str
    slots: dict[str, str]
    prompt: str
    request_key: str


class ChatProvider(Protocol):
    def complete(self, request: ProviderRequest) -> str: ...


class LiveChatProvider:
    """Chat-completion style HTTP endpoint; temperature pinned to 0."""

    def __init__(self, endpoint: str, api_key: str, timeout: float = 60.0):
        self.endpoint = endpoint
        self.api_key = api_key
        self.timeout = timeout

    def complete(self, request: ProviderRequest) -> str:
        body = {
            "model": request.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": 0,
        }
        headers = {"Authorization": f"Bearer {self.api_key}"}
        last_exc = None
        for _ in range(2):  # one retry on transport failure
            try:
                response = requests.post(
                    self.endpoint, json=body, headers=headers, timeout=self.timeout
                )
                if response.status_code >= 500 or response.status_code == 429:
                    last_exc = TransportError(f"provider returned {response.status_code}")
                    continue
                response.raise_for_status()
                payload = response.json()
                return payload["choices"][0]["message"]["content"]
            except requests.RequestException as exc:
                last_exc = exc
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                raise PayloadParseError(f"malformed completion envelope: {exc}")
        raise TransportError(f"completion request failed: {last_exc}")


class ReplayChatProvider:
    """Immutable transcript store; lookups go by request key only."""

    def __init__(self, transcripts: dict[str, ProviderTranscript], strict: bool = True):
        self._transcripts = dict(transcripts)
        self.strict = strict

    @classmethod
    def load(cls, path: str | Path, strict: bool = True) -> "ReplayChatProvider":
        transcripts: dict[str, ProviderTranscript] = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            doc = json.loads(line)
            record = ProviderTranscript(
                kind=doc["kind"],
                rendered_prompt=doc["rendered_prompt"],
                raw_response=doc["raw_response"],
                request_key=doc["request_key"],
            )
            existing = transcripts.get(record.request_key)
            if existing is not None and existing.raw_response != record.raw_response:
                raise ValueError(f"conflicting transcripts for key {record.request_key}")
            transcripts[record.request_key] = record
        return cls(transcripts, strict=strict)

    def complete(self, request: ProviderRequest) -> str:
        record = self._transcripts.get(request.request_key)
        if record is None:
            raise FixtureMissError(request.request_key, kind=request.kind.value)
        return record.raw_response


class RecordingProvider:
    """Wraps a provider and appends transcripts through a serialized writer."""

    def __init__(self, inner: ChatProvider, path: str | Path):
        self._inner = inner
        self._path = Path(path)
        self._lock = threading.Lock()

    def complete(self, request: ProviderRequest) -> str:
        raw = self._inner.complete(request)
        record = {
            "request_key": request.request_key,
            "kind": request.kind.value,
            "rendered_prompt": request.prompt,
            "raw_response": raw,
        }
        with self._lock:
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        return raw
