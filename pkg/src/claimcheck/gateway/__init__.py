from .offline import OfflineProvider, overlap_judge
from .ops import (
    Gateway,
    aggregate_judgments,
    build_evidence_digest,
    canonical_judgments,
    serialize_analyses,
)
from .parsing import normalize_decision, normalize_stance, parse_json_payload
from .prompts import SLOTS, TEMPLATES, PromptKind, render_prompt
from .providers import (
    ChatProvider,
    LiveChatProvider,
    ProviderRequest,
    RecordingProvider,
    ReplayChatProvider,
    request_key,
)
from .types import EvidenceJudgment, KeyClaim, ProviderTranscript, SearchQuery

__all__ = [
    "ChatProvider",
    "EvidenceJudgment",
    "Gateway",
    "KeyClaim",
    "LiveChatProvider",
    "OfflineProvider",
    "PromptKind",
    "ProviderRequest",
    "ProviderTranscript",
    "RecordingProvider",
    "ReplayChatProvider",
    "SLOTS",
    "SearchQuery",
    "TEMPLATES",
    "aggregate_judgments",
    "build_evidence_digest",
    "canonical_judgments",
    "normalize_decision",
    "normalize_stance",
    "overlap_judge",
    "parse_json_payload",
    "render_prompt",
    "request_key",
    "serialize_analyses",
]
