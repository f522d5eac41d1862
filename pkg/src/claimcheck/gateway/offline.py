"""Deterministic no-model provider.

Computes every payload from the request's slot values alone, so a run in
this mode is a pure function of its inputs. This backs tests, fixture
recording, and the synthetic evaluation corpus. Judging uses a keyword
overlap heuristic with explicit polarity markers in the evidence text.
"""

from __future__ import annotations

import json
import re

from ..types import Stance, VerdictLabel
from .ops import aggregate_judgments, digest_round, parse_analyses
from .prompts import PromptKind
from .providers import ProviderRequest

SUPPORT_MARKER = "CONFIRMED:"
REFUTE_MARKER = "DEBUNKED:"
OVERLAP_THRESHOLD = 0.5

_WORD_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> set[str]:
    return set(_WORD_RE.findall(text.lower()))


def overlap_ratio(claim_text: str, evidence_text: str) -> float:
    claim_tokens = tokenize(claim_text)
    if not claim_tokens:
        return 0.0
    return len(claim_tokens & tokenize(evidence_text)) / len(claim_tokens)


def overlap_judge(claim_text: str, evidence_text: str) -> tuple[str, int, str]:
    """Keyword-overlap stance call: (surface token, confidence, rationale)."""
    ratio = overlap_ratio(claim_text, evidence_text)
    confidence = round(100 * ratio)
    if SUPPORT_MARKER in evidence_text and ratio >= OVERLAP_THRESHOLD:
        token = "support"
    elif REFUTE_MARKER in evidence_text and ratio >= OVERLAP_THRESHOLD:
        token = "negate"
    else:
        token = "baseless"
    rationale = f"keyword overlap {ratio:.2f} with claim terms"
    return token, confidence, rationale


def condense_claim(content: str, limit: int = 300) -> str:
    return " ".join(content.split())[:limit].strip()


class OfflineProvider:
    """Answers every prompt kind deterministically from its inputs."""

    def complete(self, request: ProviderRequest) -> str:
        slots = request.slots
        kind = request.kind
        if kind is PromptKind.CLAIM_EXTRACTION:
            payload = {"key_claim": condense_claim(slots["content"])}
        elif kind is PromptKind.QUERY_GENERATION:
            payload = {"query": slots["claim"]}
        elif kind is PromptKind.EVIDENCE_EVALUATION:
            token, confidence, rationale = overlap_judge(slots["claim"], slots["search_result"])
            payload = {
                "support_or_contradict_or_unrelated": token,
                "confidence": confidence,
                "rationale": rationale,
            }
        elif kind is PromptKind.DECISION:
            judgments = parse_analyses(slots["analyses_text"])
            label, confidence = aggregate_judgments(judgments)
            decision = label.value if label is VerdictLabel.NEI else label.value.lower()
            payload = {"decision": decision, "confidence": confidence}
        elif kind is PromptKind.EXPLANATION:
            payload = {"explanation": _explanation_text(slots)}
        elif kind is PromptKind.QUERY_REFORMULATION:
            next_round = digest_round(slots["evidence_digest"]) + 1
            payload = {"query": f"{slots['claim']} (round {next_round})"}
        else:
            raise ValueError(f"unhandled prompt kind {kind}")
        return json.dumps(payload, ensure_ascii=False)


def _explanation_text(slots: dict[str, str]) -> str:
    decision = slots["decision"]
    confidence = slots["confidence"]
    claim = slots["claim"]
    if decision == "NEI":
        return (
            f"The collected evidence was not sufficient to confirm or refute the claim "
            f"'{claim}'. No confident determination could be made (confidence {confidence})."
        )
    verdict_word = "accurate" if decision == "real" else "inaccurate"
    return (
        f"Based on the weighted stance of the retrieved evidence, the claim "
        f"'{claim}' was classified as {decision} (confidence {confidence}). "
        f"The majority of relevant sources indicate the statement is {verdict_word}."
    )
