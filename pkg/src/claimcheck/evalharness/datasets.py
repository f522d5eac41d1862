"""Dataset ingestion for the evaluation CLI.

Gold labels are binary (Real / Fake). Loaders never guess a label
mapping: callers supply one, and rows that cannot be mapped are either
an error (strict) or skipped and counted.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..types import VerdictLabel

FORMATS = ("liar-tsv", "politifact-json", "generic-csv")

_TEXT_KEYS = ("text", "claim", "statement")


@dataclass(frozen=True)
class LabeledClaim:
    id: str
    text: str
    gold: VerdictLabel

    def __post_init__(self):
        if self.gold not in (VerdictLabel.REAL, VerdictLabel.FAKE):
            raise ValueError("gold label must be Real or Fake")


@dataclass
class LoadedDataset:
    claims: list[LabeledClaim] = field(default_factory=list)
    skipped_rows: int = 0
    skipped_labels: int = 0

    def __len__(self):
        return len(self.claims)

    def __iter__(self):
        return iter(self.claims)

    def counts(self) -> dict[str, int]:
        return {
            "Real": sum(1 for c in self.claims if c.gold is VerdictLabel.REAL),
            "Fake": sum(1 for c in self.claims if c.gold is VerdictLabel.FAKE),
        }


def _map_label(raw: str, label_map: dict[str, str]) -> VerdictLabel | None:
    mapped = label_map.get(raw.strip().lower())
    if mapped is None:
        return None
    return VerdictLabel(mapped)


def _rows(path: Path, fmt: str):
    if fmt == "liar-tsv":
        # Columns: id, label, statement, <metadata...>
        with path.open(encoding="utf-8", newline="") as fh:
            for i, row in enumerate(csv.reader(fh, delimiter="\t")):
                if len(row) < 3:
                    yield i, None, None, None
                else:
                    yield i, row[0], row[1], row[2]
    elif fmt == "politifact-json":
        docs = json.loads(path.read_text(encoding="utf-8"))
        for i, doc in enumerate(docs):
            text = next((doc[k] for k in _TEXT_KEYS if doc.get(k)), None)
            yield i, str(doc.get("id", i)), doc.get("label"), text
    elif fmt == "generic-csv":
        with path.open(encoding="utf-8", newline="") as fh:
            for i, doc in enumerate(csv.DictReader(fh)):
                text = next((doc[k] for k in _TEXT_KEYS if doc.get(k)), None)
                yield i, str(doc.get("id", i)), doc.get("label"), text
    else:
        raise ValueError(f"unknown dataset format {fmt!r}; expected one of {FORMATS}")


def load_dataset(
    path: str | Path,
    fmt: str,
    label_map: dict[str, str],
    strict: bool = True,
    expected_counts: dict[str, int] | None = None,
) -> LoadedDataset:
    """Read a dataset file into labeled claims.

    ``label_map`` maps source labels (lowercased) onto "Real" / "Fake".
    ``expected_counts`` optionally pins the resulting per-class totals;
    a mismatch raises, which guards against a wrong binarization.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    loaded = LoadedDataset()
    for i, row_id, raw_label, text in _rows(path, fmt):
        if not text or raw_label is None:
            loaded.skipped_rows += 1
            continue
        gold = _map_label(str(raw_label), label_map)
        if gold is None:
            if strict:
                raise ValueError(f"row {i}: label {raw_label!r} not covered by label_map")
            loaded.skipped_labels += 1
            continue
        loaded.claims.append(LabeledClaim(id=str(row_id), text=text, gold=gold))

    if expected_counts:
        actual = loaded.counts()
        for label, expected in expected_counts.items():
            if actual.get(label) != expected:
                raise ValueError(
                    f"expected {expected} {label} claims, loaded {actual.get(label)}"
                )
    return loaded
