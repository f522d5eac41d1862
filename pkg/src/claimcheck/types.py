"""Cross-cutting vocabulary: verdict labels and evidence stances."""

from __future__ import annotations

from enum import Enum


class VerdictLabel(str, Enum):
    REAL = "Real"
    FAKE = "Fake"
    NEI = "NEI"


class Stance(str, Enum):
    SUPPORT = "Support"
    REFUTE = "Refute"
    UNRELATED = "Unrelated"
