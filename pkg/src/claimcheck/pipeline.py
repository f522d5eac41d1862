"""Iterative retrieval-and-judging verification of a single claim.

One verification runs: extract the key claim, generate a query, then up
to ``max_iters`` rounds of search, source filtering, evidence extraction,
parallel judging, and aggregation. A round whose interim verdict is
confident (label is not NEI and confidence meets the threshold) ends the
loop; otherwise the query is reformulated and the loop continues, and the
final round's interim result is returned.

Evidence accumulates across rounds. Judgments are cached per evidence
item so only new (or previously failed) items hit the provider; the
aggregation step always sees the full accumulated judgment set, in
canonical source-URL order, which makes the outcome independent of
completion order.
"""

from __future__ import annotations

import logging
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Protocol, Sequence

from .clock import Clock, SystemClock
from .config import PipelineConfig
from .dispatch import ThrottlePolicy, TokenBucket, run_bounded
from .errors import PipelineError
from .gateway.ops import build_evidence_digest, canonical_judgments
from .gateway.types import EvidenceJudgment, KeyClaim, SearchQuery
from .retrieval import (
    Blacklist,
    EvidenceText,
    PageFetcher,
    SearchProvider,
    extract_relevant_text,
    filter_sources,
)
from .types import VerdictLabel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Claim:
    text: str
    submitted_at: datetime
    id: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("claim text must be non-empty")

    @classmethod
    def new(cls, text: str) -> "Claim":
        return cls(text=text, submitted_at=datetime.now(timezone.utc), id=uuid.uuid4().hex)


@dataclass
class IterationTrace:
    round: int
    query: SearchQuery
    results_retrieved: int
    results_after_filter: int
    judgments: list[EvidenceJudgment]
    interim_label: VerdictLabel
    interim_confidence: int

    def __post_init__(self):
        if self.round < 1:
            raise ValueError("round must be >= 1")
        if self.results_after_filter > self.results_retrieved:
            raise ValueError("filtered count cannot exceed retrieved count")

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "query": {"text": self.query.text, "origin": self.query.origin, "round": self.query.round},
            "results_retrieved": self.results_retrieved,
            "results_after_filter": self.results_after_filter,
            "judgments": [j.to_dict() for j in self.judgments],
            "interim_label": self.interim_label.value,
            "interim_confidence": self.interim_confidence,
        }


@dataclass
class Verdict:
    label: VerdictLabel
    confidence: int
    explanation: str
    traces: list[IterationTrace]
    iterations_used: int
    wall_time: float

    def __post_init__(self):
        if not 0 <= self.confidence <= 100:
            raise ValueError("confidence out of [0, 100]")
        if not self.explanation:
            raise ValueError("explanation must be non-empty")
        if self.iterations_used < 1 or self.iterations_used != len(self.traces):
            raise ValueError("iterations_used must match the trace count")

    def to_dict(self) -> dict:
        final = self.traces[-1].judgments if self.traces else []
        return {
            "label": self.label.value,
            "confidence": self.confidence,
            "explanation": self.explanation,
            "iterations_used": self.iterations_used,
            "wall_time": self.wall_time,
            "evidence": [j.to_dict() for j in final],
            "traces": [t.to_dict() for t in self.traces],
        }


class GatewayLike(Protocol):
    def extract_key_claim(self, content: str) -> KeyClaim: ...

    def generate_query(self, claim: KeyClaim) -> SearchQuery: ...

    def judge_evidence(self, claim: KeyClaim, evidence: EvidenceText) -> EvidenceJudgment: ...

    def decide(self, claim: KeyClaim, judgments: Sequence[EvidenceJudgment]) -> tuple[VerdictLabel, int]: ...

    def explain(self, claim: KeyClaim, label: VerdictLabel, confidence: int) -> str: ...

    def reformulate_query(
        self, claim: KeyClaim, evidence_digest: str, round: int, previous: SearchQuery
    ) -> SearchQuery: ...


@dataclass
class VerifierDeps:
    gateway: GatewayLike
    search: SearchProvider
    blacklist: Blacklist
    limiter: TokenBucket | None = None
    clock: Clock = field(default_factory=SystemClock)
    # Wall-time source; defaults to `clock`. Replay deployments pin this to a
    # fixed clock so verdict timing fields are identical across runs.
    timer: Clock | None = None
    page_fetcher: PageFetcher | None = None


def should_terminate(label: VerdictLabel, confidence: int, tau: int) -> bool:
    """Confident-decision check: the label is settled and meets the threshold.

    The comparison is inclusive at confidence == tau.
    """
    if not 0 <= confidence <= 100 or not 0 <= tau <= 100:
        raise ValueError("confidence and tau must be in [0, 100]")
    return label is not VerdictLabel.NEI and confidence >= tau


class _VerificationState:
    """Accumulated evidence and judgment cache for one verification."""

    def __init__(self):
        self.evidence: dict[tuple[str, str], EvidenceText] = {}
        self.judgments: dict[tuple[str, str], EvidenceJudgment] = {}

    def add_evidence(self, items: Sequence[EvidenceText]):
        for item in items:
            self.evidence.setdefault((item.source_url, item.text), item)

    def pending(self) -> list[tuple[tuple[str, str], EvidenceText]]:
        return [(k, e) for k, e in self.evidence.items() if k not in self.judgments]

    def accumulated(self) -> list[EvidenceJudgment]:
        return canonical_judgments(self.judgments.values())


def run_iteration(
    key_claim: KeyClaim,
    query: SearchQuery,
    round_index: int,
    config: PipelineConfig,
    deps: VerifierDeps,
    state: _VerificationState | None = None,
) -> IterationTrace:
    """Execute one round: retrieve, filter, extract, judge in parallel, aggregate."""
    if not 1 <= round_index <= config.max_iters:
        raise ValueError(f"round_index {round_index} out of [1, {config.max_iters}]")
    state = state if state is not None else _VerificationState()

    if config.retrieval_enabled:
        results = deps.search.search(query.text, config.top_k)
        kept = filter_sources(results, deps.blacklist)
    else:
        results, kept = [], []

    extracted = [
        extract_relevant_text(
            r, config.evidence_mode, fetcher=deps.page_fetcher, char_budget=config.page_char_budget
        )
        for r in kept
    ]
    state.add_evidence(extracted)

    pending = state.pending()
    if pending:
        policy = ThrottlePolicy(
            max_concurrent=config.max_concurrent,
            rate=config.rate,
            window_s=config.window_ms / 1000.0,
            retry_budget=config.retry_budget,
        )
        tasks = [
            (lambda item=item: deps.gateway.judge_evidence(key_claim, item))
            for _, item in pending
        ]
        outcomes = run_bounded(tasks, policy, limiter=deps.limiter, clock=deps.clock)
        for (key, _), outcome in zip(pending, outcomes):
            if outcome.ok:
                state.judgments[key] = outcome.value
            else:
                # Failed slots stay uncached and are retried next round.
                logger.warning("judgment failed for %s: %s", key[0], outcome.error)

    judgments = state.accumulated()
    label, confidence = deps.gateway.decide(key_claim, judgments)
    return IterationTrace(
        round=round_index,
        query=query,
        results_retrieved=len(results),
        results_after_filter=len(kept),
        judgments=judgments,
        interim_label=label,
        interim_confidence=confidence,
    )


def verify_claim(claim: Claim, config: PipelineConfig, deps: VerifierDeps) -> Verdict:
    """Run the full verification loop for one claim."""
    timer = deps.timer or deps.clock
    started = timer.monotonic()
    traces: list[IterationTrace] = []
    state = _VerificationState()
    try:
        key_claim = deps.gateway.extract_key_claim(claim.text)
        query = deps.gateway.generate_query(key_claim)
        label, confidence = VerdictLabel.NEI, 0
        for round_index in range(1, config.max_iters + 1):
            trace = run_iteration(key_claim, query, round_index, config, deps, state)
            traces.append(trace)
            label, confidence = trace.interim_label, trace.interim_confidence
            if should_terminate(label, confidence, config.tau):
                break
            if round_index < config.max_iters:
                query = _next_query(claim, key_claim, query, round_index, config, deps, state)
        explanation = deps.gateway.explain(key_claim, label, confidence)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(f"verification failed: {exc}", traces=traces) from exc
    return Verdict(
        label=label,
        confidence=confidence,
        explanation=explanation,
        traces=traces,
        iterations_used=len(traces),
        wall_time=timer.monotonic() - started,
    )


def _next_query(
    claim: Claim,
    key_claim: KeyClaim,
    previous: SearchQuery,
    rounds_completed: int,
    config: PipelineConfig,
    deps: VerifierDeps,
    state: _VerificationState,
) -> SearchQuery:
    if config.reformulate_mode == "regenerate":
        fresh_key = deps.gateway.extract_key_claim(claim.text)
        regenerated = deps.gateway.generate_query(fresh_key)
        return SearchQuery(text=regenerated.text, origin="reformulated", round=rounds_completed + 1)
    digest = build_evidence_digest(
        list(state.evidence.values()), rounds_completed, config.digest_char_budget
    )
    return deps.gateway.reformulate_query(key_claim, digest, rounds_completed + 1, previous)
