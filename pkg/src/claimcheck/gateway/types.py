"""Domain records produced and consumed by the language-model gateway."""

from __future__ import annotations

from dataclasses import dataclass

from ..types import Stance


@dataclass(frozen=True)
class KeyClaim:
    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("key claim text must be non-empty")


@dataclass(frozen=True)
class SearchQuery:
    text: str
    origin: str = "initial"  # initial | reformulated
    round: int = 1

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("query text must be non-empty")
        if self.origin not in ("initial", "reformulated"):
            raise ValueError(f"bad query origin {self.origin!r}")


@dataclass(frozen=True)
class EvidenceJudgment:
    stance: Stance
    confidence: int
    rationale: str
    source_url: str

    def __post_init__(self):
        if not 0 <= self.confidence <= 100:
            raise ValueError(f"judgment confidence {self.confidence} out of [0, 100]")

    def sort_key(self):
        """Canonical ordering used everywhere judgments are aggregated."""
        return (self.source_url, self.rationale, self.stance.value, self.confidence)

    def to_dict(self) -> dict:
        return {
            "stance": self.stance.value,
            "confidence": self.confidence,
            "rationale": self.rationale,
            "source_url": self.source_url,
        }


@dataclass(frozen=True)
class ProviderTranscript:
    kind: str
    rendered_prompt: str
    raw_response: str
    request_key: str
