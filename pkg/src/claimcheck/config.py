"""Configuration: dataclass settings, YAML config file, environment overrides.

Load-bearing defaults (documented in the README):
    pipeline.tau = 50, pipeline.max_iters = 3, search.top_k = 10,
    dispatch.max_concurrent = 5, dispatch.rate = 10 per
    dispatch.window_ms = 1000.

Environment variables override file values; the variable for a key
``section.field`` is ``CLAIMCHECK_<SECTION>_<FIELD>`` (upper case).
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

EVIDENCE_MODES = ("snippet-only", "full-page")
REFORMULATE_MODES = ("evidence", "regenerate")
PROVIDER_MODES = ("live", "replay", "offline-deterministic")


@dataclass
class PipelineConfig:
    """Runtime knobs for one verification run (file sections merged)."""

    tau: int = 50
    max_iters: int = 3
    top_k: int = 10
    max_concurrent: int = 5
    rate: int = 10
    window_ms: int = 1000
    retry_budget: int = 1
    evidence_mode: str = "snippet-only"
    reformulate_mode: str = "evidence"
    retrieval_enabled: bool = True
    page_char_budget: int = 8000
    digest_char_budget: int = 1500

    def __post_init__(self):
        if not 0 <= self.tau <= 100:
            raise ValueError(f"tau must be in [0, 100], got {self.tau}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")
        if self.max_concurrent < 1:
            raise ValueError("max_concurrent must be >= 1")
        if self.rate < 1:
            raise ValueError("rate must be >= 1")
        if self.evidence_mode not in EVIDENCE_MODES:
            raise ValueError(f"evidence_mode must be one of {EVIDENCE_MODES}")
        if self.reformulate_mode not in REFORMULATE_MODES:
            raise ValueError(f"reformulate_mode must be one of {REFORMULATE_MODES}")


@dataclass
class PipelineSection:
    tau: int = 50
    max_iters: int = 3
    evidence_mode: str = "snippet-only"
    reformulate_mode: str = "evidence"
    retrieval_enabled: bool = True
    page_char_budget: int = 8000
    digest_char_budget: int = 1500


@dataclass
class DispatchSection:
    max_concurrent: int = 5
    rate: int = 10
    window_ms: int = 1000
    retry_budget: int = 1


@dataclass
class GatewayConfig:
    mode: str = "offline-deterministic"
    model: str = "gpt-4"
    endpoint: str = ""
    api_key_env: str = "LLM_API_KEY"
    replay_path: str = ""
    record_path: str = ""

    def __post_init__(self):
        if self.mode not in PROVIDER_MODES:
            raise ValueError(f"gateway.mode must be one of {PROVIDER_MODES}")


@dataclass
class SearchConfig:
    mode: str = "offline-deterministic"
    top_k: int = 10
    endpoint: str = ""
    api_key_env: str = "SEARCH_API_KEY"
    engine_id: str = ""
    replay_path: str = ""
    record_path: str = ""
    blacklist_path: str = ""

    def __post_init__(self):
        if self.mode not in PROVIDER_MODES:
            raise ValueError(f"search.mode must be one of {PROVIDER_MODES}")


@dataclass
class FeedConfig:
    mode: str = "offline-deterministic"
    endpoint: str = "https://factchecktools.googleapis.com/v1alpha1/claims:search"
    api_key_env: str = "FACTCHECK_API_KEY"
    fixture_path: str = ""
    max_age_days: int = 7
    ttl_seconds: int = 300
    page_size: int = 20
    topic: str = ""


@dataclass
class CommunityConfig:
    store: str = "memory"  # memory | sqlite
    db_path: str = "community.db"


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    workers: int = 2
    queue_capacity: int = 32
    max_claim_chars: int = 2000


@dataclass
class EvalConfig:
    dataset: str = ""
    format: str = "generic-csv"
    label_map: str = ""  # inline JSON; empty means the default true/false map
    variant: str = "full"
    fixtures: str = ""
    out: str = "eval-out"
    rounds: int = 3
    delay_ms: int = 0
    claim_workers: int = 4
    strict_labels: bool = True


@dataclass
class AppConfig:
    pipeline: PipelineSection = field(default_factory=PipelineSection)
    dispatch: DispatchSection = field(default_factory=DispatchSection)
    gateway: GatewayConfig = field(default_factory=GatewayConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    feed: FeedConfig = field(default_factory=FeedConfig)
    community: CommunityConfig = field(default_factory=CommunityConfig)
    service: ServiceConfig = field(default_factory=ServiceConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)

    def runtime_pipeline(self) -> PipelineConfig:
        """Merge the pipeline, dispatch, and search sections into the
        runtime object the verification loop consumes."""
        return PipelineConfig(
            tau=self.pipeline.tau,
            max_iters=self.pipeline.max_iters,
            top_k=self.search.top_k,
            max_concurrent=self.dispatch.max_concurrent,
            rate=self.dispatch.rate,
            window_ms=self.dispatch.window_ms,
            retry_budget=self.dispatch.retry_budget,
            evidence_mode=self.pipeline.evidence_mode,
            reformulate_mode=self.pipeline.reformulate_mode,
            retrieval_enabled=self.pipeline.retrieval_enabled,
            page_char_budget=self.pipeline.page_char_budget,
            digest_char_budget=self.pipeline.digest_char_budget,
        )


_SECTIONS = {
    "pipeline": PipelineSection,
    "dispatch": DispatchSection,
    "gateway": GatewayConfig,
    "search": SearchConfig,
    "feed": FeedConfig,
    "community": CommunityConfig,
    "service": ServiceConfig,
    "eval": EvalConfig,
}

ENV_PREFIX = "CLAIMCHECK"


def _coerce(raw: str, target_type):
    if target_type is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    return raw


def _field_type(f: dataclasses.Field):
    # Fields are annotated with plain builtin types; map the string form back.
    return {"int": int, "float": float, "bool": bool, "str": str}.get(str(f.type), str)


def _env_overrides(section: str, cls, environ) -> dict:
    values = {}
    for f in dataclasses.fields(cls):
        var = f"{ENV_PREFIX}_{section.upper()}_{f.name.upper()}"
        if var in environ:
            values[f.name] = _coerce(environ[var], _field_type(f))
    return values


def load_config(path: str | Path | None = None, environ=None) -> AppConfig:
    """Build an AppConfig from an optional YAML file plus environment overrides."""
    environ = os.environ if environ is None else environ
    doc = {}
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        doc = yaml.safe_load(text) or {}
        if not isinstance(doc, dict):
            raise ValueError(f"config file {path} must hold a mapping at top level")
    unknown_sections = set(doc) - set(_SECTIONS)
    if unknown_sections:
        raise ValueError(f"unknown config sections: {sorted(unknown_sections)}")

    sections = {}
    for name, cls in _SECTIONS.items():
        file_part = doc.get(name, {}) or {}
        if not isinstance(file_part, dict):
            raise ValueError(f"config section {name!r} must be a mapping")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(file_part) - known
        if unknown:
            raise ValueError(f"unknown keys in config section {name!r}: {sorted(unknown)}")
        merged = dict(file_part)
        merged.update(_env_overrides(name, cls, environ))
        sections[name] = cls(**merged)
    config = AppConfig(**sections)
    config.runtime_pipeline()  # validate the merged values eagerly
    return config
