"""Retrieval-augmented claim verification: iterative web-evidence
judging with evidence-based verdicts, plus a fact-check feed, a
community discussion store, an HTTP API, and an evaluation harness."""

from .config import AppConfig, PipelineConfig, load_config
from .pipeline import Claim, IterationTrace, Verdict, should_terminate, verify_claim
from .types import Stance, VerdictLabel

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "Claim",
    "IterationTrace",
    "PipelineConfig",
    "Stance",
    "Verdict",
    "VerdictLabel",
    "__version__",
    "load_config",
    "should_terminate",
    "verify_claim",
]
