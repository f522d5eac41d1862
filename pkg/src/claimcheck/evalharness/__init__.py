from .datasets import FORMATS, LabeledClaim, LoadedDataset, load_dataset
from .metrics import ClassMetrics, MetricsReport, compute_metrics
from .runner import (
    VARIANTS,
    EvalRun,
    build_eval_deps,
    measure_latency,
    run_eval,
    sweep_rounds,
    variant_model,
    variant_pipeline_config,
)
from .synthetic import SyntheticCorpus, SyntheticSearchProvider, build_corpus

__all__ = [
    "FORMATS",
    "VARIANTS",
    "ClassMetrics",
    "EvalRun",
    "LabeledClaim",
    "LoadedDataset",
    "MetricsReport",
    "SyntheticCorpus",
    "SyntheticSearchProvider",
    "build_corpus",
    "build_eval_deps",
    "compute_metrics",
    "load_dataset",
    "measure_latency",
    "run_eval",
    "sweep_rounds",
    "variant_model",
    "variant_pipeline_config",
]
