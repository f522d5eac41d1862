"""Evaluation runs: full pipeline over a labeled dataset, ablation
variants, iteration-budget sweeps, and latency measurement."""

from __future__ import annotations

import dataclasses
import json
import logging
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from ..clock import Clock, SystemClock
from ..config import PipelineConfig
from ..errors import PipelineError
from ..gateway import Gateway, OfflineProvider, ReplayChatProvider
from ..pipeline import Claim, VerifierDeps, verify_claim
from ..retrieval import Blacklist, ReplaySearchProvider, load_blacklist
from ..types import VerdictLabel
from .datasets import LabeledClaim
from .metrics import MetricsReport, compute_metrics
from .synthetic import SyntheticCorpus, SyntheticSearchProvider

logger = logging.getLogger(__name__)

VARIANTS = ("full", "noret", "nores", "model-swap")
MODEL_SWAP_TAG = "gpt-3.5-turbo"


def variant_pipeline_config(base: PipelineConfig, variant: str) -> PipelineConfig:
    if variant == "full" or variant == "model-swap":
        return base
    if variant == "noret":
        return dataclasses.replace(base, retrieval_enabled=False)
    if variant == "nores":
        return dataclasses.replace(base, max_iters=1)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def variant_model(base_model: str, variant: str) -> str:
    return MODEL_SWAP_TAG if variant == "model-swap" else base_model


def build_eval_deps(
    fixtures_dir: str | Path,
    model: str = "gpt-4",
    clock: Clock | None = None,
) -> VerifierDeps:
    """Assemble pipeline dependencies from a fixtures directory.

    A ``corpus.json`` file selects the synthetic corpus (offline judge,
    scripted searches); otherwise ``llm_replay.jsonl`` and
    ``search_replay.jsonl`` are loaded for strict replay. An optional
    ``blacklist.txt`` supplies the source filter either way.
    """
    fixtures_dir = Path(fixtures_dir)
    clock = clock or SystemClock()
    corpus_path = fixtures_dir / "corpus.json"
    if corpus_path.exists():
        corpus = SyntheticCorpus.load(corpus_path)
        search = SyntheticSearchProvider(corpus)
        gateway = Gateway(OfflineProvider(), model=model)
        blacklist = Blacklist(domains=corpus.blacklist_domains, source_path=str(corpus_path))
    else:
        search = ReplaySearchProvider.load(fixtures_dir / "search_replay.jsonl")
        gateway = Gateway(ReplayChatProvider.load(fixtures_dir / "llm_replay.jsonl"), model=model)
        blacklist_path = fixtures_dir / "blacklist.txt"
        blacklist = (
            load_blacklist(blacklist_path)
            if blacklist_path.exists()
            else Blacklist(domains=frozenset())
        )
    return VerifierDeps(gateway=gateway, search=search, blacklist=blacklist, clock=clock)


@dataclass
class ClaimRecord:
    id: str
    gold: VerdictLabel
    predicted: VerdictLabel
    confidence: int
    iterations_used: int
    wall_time: float
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "gold": self.gold.value,
            "predicted": self.predicted.value,
            "confidence": self.confidence,
            "iterations_used": self.iterations_used,
            "wall_time": self.wall_time,
            "error": self.error,
        }


@dataclass
class EvalRun:
    variant: str
    report: MetricsReport
    records: list[ClaimRecord]

    def write(self, out_dir: str | Path):
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(
            json.dumps({"variant": self.variant, **self.report.to_dict()}, indent=1),
            encoding="utf-8",
        )
        with (out / "report.csv").open("w", encoding="utf-8") as fh:
            fh.write("class,f1,precision,recall,tp,fp,fn\n")
            for name, m in (("Real", self.report.real), ("Fake", self.report.fake)):
                fh.write(f"{name},{m.f1},{m.precision},{m.recall},{m.tp},{m.fp},{m.fn}\n")
        with (out / "per_claim.jsonl").open("w", encoding="utf-8") as fh:
            for record in self.records:
                fh.write(json.dumps(record.to_dict()) + "\n")


def _verify_one(claim: LabeledClaim, config: PipelineConfig, deps: VerifierDeps) -> ClaimRecord:
    try:
        verdict = verify_claim(Claim.new(claim.text), config, deps)
        return ClaimRecord(
            id=claim.id,
            gold=claim.gold,
            predicted=verdict.label,
            confidence=verdict.confidence,
            iterations_used=verdict.iterations_used,
            wall_time=verdict.wall_time,
        )
    except PipelineError as exc:
        logger.warning("claim %s failed: %s", claim.id, exc)
        return ClaimRecord(
            id=claim.id,
            gold=claim.gold,
            predicted=VerdictLabel.NEI,
            confidence=0,
            iterations_used=len(exc.traces),
            wall_time=0.0,
            error=str(exc),
        )


def run_eval(
    claims: list[LabeledClaim],
    config: PipelineConfig,
    variant: str,
    deps: VerifierDeps,
    claim_workers: int = 4,
) -> EvalRun:
    run_config = variant_pipeline_config(config, variant)
    with ThreadPoolExecutor(max_workers=claim_workers) as pool:
        records = list(pool.map(lambda c: _verify_one(c, run_config, deps), claims))
    report = compute_metrics([r.predicted for r in records], [r.gold for r in records])
    return EvalRun(variant=variant, report=report, records=records)


def sweep_rounds(
    claims: list[LabeledClaim],
    config: PipelineConfig,
    deps: VerifierDeps,
    rounds: int,
    claim_workers: int = 4,
) -> list[tuple[int, MetricsReport]]:
    """One full evaluation per iteration budget 1..rounds."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    results = []
    for r in range(1, rounds + 1):
        run_config = dataclasses.replace(config, max_iters=r)
        run = run_eval(claims, run_config, "full", deps, claim_workers)
        results.append((r, run.report))
    return results


def write_sweep(results: list[tuple[int, MetricsReport]], out_dir: str | Path):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with (out / "sweep.csv").open("w", encoding="utf-8") as fh:
        fh.write("rounds,f1_real,f1_fake,f1_macro,n_nei\n")
        for r, report in results:
            fh.write(
                f"{r},{report.real.f1},{report.fake.f1},{report.macro_f1},{report.n_nei}\n"
            )
    (out / "sweep.json").write_text(
        json.dumps([{"rounds": r, **report.to_dict()} for r, report in results], indent=1),
        encoding="utf-8",
    )


def measure_latency(
    claims: list[LabeledClaim],
    config: PipelineConfig,
    deps: VerifierDeps,
    claim_workers: int = 4,
) -> dict:
    """Wall-time summary over per-claim verification runs."""
    if not claims:
        return {"n": 0}
    run = run_eval(claims, config, "full", deps, claim_workers)
    times = [r.wall_time for r in run.records]
    times_sorted = sorted(times)

    def pct(q: float) -> float:
        idx = min(len(times_sorted) - 1, max(0, round(q * (len(times_sorted) - 1))))
        return times_sorted[idx]

    return {
        "n": len(times),
        "min": min(times),
        "max": max(times),
        "mean": statistics.fmean(times),
        "p50": pct(0.50),
        "p95": pct(0.95),
    }


class DelayingChatProvider:
    """Adds a fixed delay before each completion (latency experiments)."""

    def __init__(self, inner, delay_s: float, clock: Clock | None = None):
        self._inner = inner
        self._delay = delay_s
        self._clock = clock or SystemClock()

    def complete(self, request):
        self._clock.sleep(self._delay)
        return self._inner.complete(request)


class DelayingSearchProvider:
    def __init__(self, inner, delay_s: float, clock: Clock | None = None):
        self._inner = inner
        self._delay = delay_s
        self._clock = clock or SystemClock()

    def search(self, query: str, top_k: int):
        self._clock.sleep(self._delay)
        return self._inner.search(query, top_k)
