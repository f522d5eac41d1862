"""The gateway operations: claim extraction, query generation, evidence
judging, decision, explanation, and query reformulation.

The gateway owns the canonical serializations (analysis blocks, evidence
digests) so that request keys are stable and replayable across modes.
"""

from __future__ import annotations

import logging
import re
from typing import Sequence

from ..errors import ContractError, PayloadParseError
from ..retrieval import EvidenceText
from ..types import Stance, VerdictLabel
from .parsing import clamp_confidence, normalize_decision, normalize_stance, parse_json_payload
from .prompts import PromptKind, render_prompt
from .providers import ChatProvider, ProviderRequest, request_key
from .types import EvidenceJudgment, KeyClaim, SearchQuery

logger = logging.getLogger(__name__)


def canonical_judgments(judgments: Sequence[EvidenceJudgment]) -> list[EvidenceJudgment]:
    """Sort judgments by source URL (then content) for order independence."""
    return sorted(judgments, key=lambda j: j.sort_key())


def serialize_analyses(judgments: Sequence[EvidenceJudgment]) -> str:
    """Render judgments into the decision prompt's analyses slot.

    Rationales are flattened to one line so the block stays parseable.
    """
    blocks = []
    for i, j in enumerate(canonical_judgments(judgments), start=1):
        rationale = " ".join(j.rationale.split())
        blocks.append(
            f"{i}. Source: {j.source_url}\n"
            f"   Stance: {j.stance.value}\n"
            f"   Confidence: {j.confidence}\n"
            f"   Rationale: {rationale}"
        )
    return "\n".join(blocks)


_ANALYSIS_RE = re.compile(
    r"^\d+\. Source: (?P<url>.*)\n"
    r"   Stance: (?P<stance>Support|Refute|Unrelated)\n"
    r"   Confidence: (?P<confidence>\d+)\n"
    r"   Rationale: (?P<rationale>.*)$",
    re.MULTILINE,
)


def parse_analyses(analyses_text: str) -> list[EvidenceJudgment]:
    """Inverse of serialize_analyses (used by the offline provider)."""
    judgments = []
    for m in _ANALYSIS_RE.finditer(analyses_text):
        judgments.append(
            EvidenceJudgment(
                stance=Stance(m.group("stance")),
                confidence=int(m.group("confidence")),
                rationale=m.group("rationale"),
                source_url=m.group("url"),
            )
        )
    return judgments


_DIGEST_HEADER_RE = re.compile(r"^after round (\d+)$", re.MULTILINE)


def build_evidence_digest(
    evidence: Sequence[EvidenceText], rounds_completed: int, char_budget: int = 1500
) -> str:
    """Summarize accumulated evidence for the reformulation prompt.

    The header records how many rounds have run, which keeps digests (and
    therefore reformulation request keys) distinct across rounds even
    when a round adds no new evidence.
    """
    lines = [f"after round {rounds_completed}"]
    for item in sorted(evidence, key=lambda e: (e.source_url, e.text)):
        lines.append(f"- {' '.join(item.text.split())}")
    return "\n".join(lines)[:char_budget]


def digest_round(evidence_digest: str) -> int:
    m = _DIGEST_HEADER_RE.search(evidence_digest)
    return int(m.group(1)) if m else 0


def aggregate_judgments(judgments: Sequence[EvidenceJudgment]) -> tuple[VerdictLabel, int]:
    """Deterministic no-model aggregation: confidence-weighted majority.

    Support weight vs refute weight decides Real vs Fake; a tie (which
    includes having no usable evidence at all) is NEI with confidence 0.
    """
    support = sum(j.confidence for j in judgments if j.stance is Stance.SUPPORT)
    refute = sum(j.confidence for j in judgments if j.stance is Stance.REFUTE)
    total = support + refute
    if total == 0 or support == refute:
        return VerdictLabel.NEI, 0
    if support > refute:
        return VerdictLabel.REAL, round(100 * support / total)
    return VerdictLabel.FAKE, round(100 * refute / total)


class Gateway:
    """Renders prompts, calls the configured provider, parses the payloads.

    A gateway handle is shareable across threads as long as its provider
    is (all shipped providers are).
    """

    def __init__(self, provider: ChatProvider, model: str = "gpt-4"):
        self.provider = provider
        self.model = model

    def _call(self, kind: PromptKind, slots: dict[str, str]) -> str:
        prompt = render_prompt(kind, slots)
        key = request_key(kind, self.model, slots)
        req = ProviderRequest(kind=kind, model=self.model, slots=slots, prompt=prompt, request_key=key)
        return self.provider.complete(req)

    def extract_key_claim(self, content: str) -> KeyClaim:
        if not content.strip():
            raise ContractError("content must be non-empty")
        raw = self._call(PromptKind.CLAIM_EXTRACTION, {"content": content})
        payload = parse_json_payload(raw, {"key_claim": str})
        if not payload["key_claim"].strip():
            raise PayloadParseError("key_claim is empty", raw=raw)
        return KeyClaim(text=payload["key_claim"])

    def generate_query(self, claim: KeyClaim) -> SearchQuery:
        raw = self._call(PromptKind.QUERY_GENERATION, {"claim": claim.text})
        payload = parse_json_payload(raw, {"query": str})
        if not payload["query"].strip():
            raise PayloadParseError("query is empty", raw=raw)
        return SearchQuery(text=payload["query"], origin="initial", round=1)

    def judge_evidence(self, claim: KeyClaim, evidence: EvidenceText) -> EvidenceJudgment:
        slots = {"search_result": evidence.text, "claim": claim.text}
        raw = self._call(PromptKind.EVIDENCE_EVALUATION, slots)
        payload = parse_json_payload(raw, {"support_or_contradict_or_unrelated": str})
        stance = normalize_stance(payload["support_or_contradict_or_unrelated"])
        confidence = clamp_confidence(payload.get("confidence", 0), context="evidence judgment")
        rationale = payload.get("rationale", "")
        if not isinstance(rationale, str):
            raise PayloadParseError("rationale has wrong type", raw=raw)
        return EvidenceJudgment(
            stance=Stance(stance),
            confidence=confidence,
            rationale=rationale,
            source_url=evidence.source_url,
        )

    def decide(self, claim: KeyClaim, judgments: Sequence[EvidenceJudgment]) -> tuple[VerdictLabel, int]:
        if not judgments:
            # Vacuous evidence never reaches the provider: not enough information.
            return VerdictLabel.NEI, 0
        slots = {"claim": claim.text, "analyses_text": serialize_analyses(judgments)}
        raw = self._call(PromptKind.DECISION, slots)
        payload = parse_json_payload(raw, {"decision": str})
        label = VerdictLabel(normalize_decision(payload["decision"]))
        confidence = clamp_confidence(payload.get("confidence", 0), context="decision")
        return label, confidence

    def explain(self, claim: KeyClaim, label: VerdictLabel, confidence: int) -> str:
        slots = {
            "claim": claim.text,
            "decision": label.value.lower() if label is not VerdictLabel.NEI else label.value,
            "confidence": str(confidence),
        }
        raw = self._call(PromptKind.EXPLANATION, slots)
        payload = parse_json_payload(raw, {"explanation": str})
        if not payload["explanation"].strip():
            raise PayloadParseError("explanation is empty", raw=raw)
        return payload["explanation"]

    def reformulate_query(
        self,
        claim: KeyClaim,
        evidence_digest: str,
        round: int,
        previous: SearchQuery,
    ) -> SearchQuery:
        if round < 2:
            raise ContractError("reformulation requires at least one completed round")
        slots = {"claim": claim.text, "evidence_digest": evidence_digest}
        text = ""
        for attempt in range(2):
            raw = self._call(PromptKind.QUERY_REFORMULATION, slots)
            payload = parse_json_payload(raw, {"query": str})
            text = payload["query"]
            if not text.strip():
                raise PayloadParseError("query is empty", raw=raw)
            if text != previous.text:
                break
            if attempt == 0:
                logger.debug("reformulated query identical to previous; retrying once")
        if text == previous.text:
            logger.warning("degenerate reformulation: query unchanged after retry (%r)", text)
        return SearchQuery(text=text, origin="reformulated", round=round)
