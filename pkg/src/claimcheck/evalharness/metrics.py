"""Per-class precision / recall / F1 for binary claim classification.

Counting is one-vs-rest per class. An NEI prediction is an abstention:
it is never a true or false positive for either class, so it costs a
false negative against the gold class. This scoring never rewards
abstaining and is stated in every report header.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..types import VerdictLabel

NEI_SCORING_NOTE = (
    "NEI predictions are scored as abstentions: a false negative for the "
    "gold class and a positive for neither class."
)


@dataclass(frozen=True)
class ClassMetrics:
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def to_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


@dataclass(frozen=True)
class MetricsReport:
    real: ClassMetrics
    fake: ClassMetrics
    n_total: int
    n_nei: int

    @property
    def macro_f1(self) -> float:
        return (self.real.f1 + self.fake.f1) / 2

    def to_dict(self) -> dict:
        return {
            "note": NEI_SCORING_NOTE,
            "n_total": self.n_total,
            "n_nei": self.n_nei,
            "macro_f1": self.macro_f1,
            "per_class": {"Real": self.real.to_dict(), "Fake": self.fake.to_dict()},
        }

    def table(self) -> str:
        lines = [
            f"{'class':<6} {'F1':>8} {'P':>8} {'R':>8} {'TP':>5} {'FP':>5} {'FN':>5}",
        ]
        for name, m in (("Real", self.real), ("Fake", self.fake)):
            lines.append(
                f"{name:<6} {m.f1:>8.4f} {m.precision:>8.4f} {m.recall:>8.4f}"
                f" {m.tp:>5} {m.fp:>5} {m.fn:>5}"
            )
        lines.append(f"n_total={self.n_total}  n_nei={self.n_nei}  macro_f1={self.macro_f1:.4f}")
        return "\n".join(lines)


def compute_metrics(
    predictions: Sequence[VerdictLabel], golds: Sequence[VerdictLabel]
) -> MetricsReport:
    if len(predictions) != len(golds):
        raise ValueError(
            f"predictions ({len(predictions)}) and golds ({len(golds)}) differ in length"
        )
    for gold in golds:
        if gold not in (VerdictLabel.REAL, VerdictLabel.FAKE):
            raise ValueError(f"gold labels must be Real or Fake, got {gold}")

    counts = {
        VerdictLabel.REAL: {"tp": 0, "fp": 0, "fn": 0},
        VerdictLabel.FAKE: {"tp": 0, "fp": 0, "fn": 0},
    }
    n_nei = 0
    for pred, gold in zip(predictions, golds):
        if pred is VerdictLabel.NEI:
            n_nei += 1
        for label in (VerdictLabel.REAL, VerdictLabel.FAKE):
            if pred is label and gold is label:
                counts[label]["tp"] += 1
            elif pred is label and gold is not label:
                counts[label]["fp"] += 1
            elif pred is not label and gold is label:
                counts[label]["fn"] += 1

    return MetricsReport(
        real=ClassMetrics(**counts[VerdictLabel.REAL]),
        fake=ClassMetrics(**counts[VerdictLabel.FAKE]),
        n_total=len(golds),
        n_nei=n_nei,
    )
