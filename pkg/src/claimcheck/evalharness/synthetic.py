"""Engineered evaluation corpus with scripted search fixtures.

40 claims, balanced Real/Fake, built so that outcomes are fully
deterministic under the offline keyword-overlap judge:

* 20 claims resolve in round 1 (four of them are traps whose evidence
  points the wrong way, so the best reachable score is below 1.0, and
  two carry a supporting decoy from a blacklisted domain that the source
  filter must remove);
* 10 resolve in round 2 and 6 in round 3 (earlier rounds return only
  unrelated filler), which makes scores improve monotonically with the
  iteration budget;
* 4 never resolve and stay NEI.

Fixtures exist for rounds 1 through ``max_round``; rounds past a claim's
resolution depth repeat the final round's results, so longer sweeps
plateau instead of missing fixtures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import FixtureMissError
from ..retrieval import SearchResult, search_request_key
from ..types import VerdictLabel
from .datasets import LabeledClaim

BLACKLISTED_DOMAIN = "unreliable-wire.example"
MAX_ROUND = 6

_PLACES = [
    "arbor falls", "brineport", "cedar hollow", "dunmore valley", "eastwick",
    "fernley heights", "glenbrook", "harlow bay", "ironvale", "juniper flats",
    "kestrel point", "larkspur", "maplewood junction", "norwick", "oakhaven",
    "pinecrest", "quarry lake", "rosefield", "silverbrook", "thornbury",
    "umberton", "valemont", "willowmere", "foxglove hills", "yarrow creek",
    "zephyr cove", "bramblewood", "cloverdale ridge", "driftstone", "elmsworth",
    "frostpine", "gullwing harbor", "hazelmoor", "ivybridge", "jadeport",
    "kilnford", "lunar mesa", "mistral plains", "nettlebrook", "opal springs",
]


@dataclass
class SyntheticClaim:
    id: str
    text: str
    gold: VerdictLabel
    rounds: dict[int, list[SearchResult]]


@dataclass
class SyntheticCorpus:
    claims: list[SyntheticClaim]
    blacklist_domains: frozenset[str]
    max_round: int = MAX_ROUND

    def labeled_claims(self) -> list[LabeledClaim]:
        return [LabeledClaim(id=c.id, text=c.text, gold=c.gold) for c in self.claims]

    def query_for(self, claim: SyntheticClaim, round_index: int) -> str:
        if round_index == 1:
            return claim.text
        return f"{claim.text} (round {round_index})"

    def query_fixtures(self) -> dict[str, list[SearchResult]]:
        fixtures = {}
        for claim in self.claims:
            for r in range(1, self.max_round + 1):
                fixtures[self.query_for(claim, r)] = claim.rounds[r]
        return fixtures

    def save(self, path: str | Path):
        doc = {
            "blacklist_domains": sorted(self.blacklist_domains),
            "max_round": self.max_round,
            "claims": [
                {
                    "id": c.id,
                    "text": c.text,
                    "gold": c.gold.value,
                    "rounds": {
                        str(r): [res.to_dict() for res in results]
                        for r, results in c.rounds.items()
                    },
                }
                for c in self.claims
            ],
        }
        Path(path).write_text(json.dumps(doc, indent=1), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SyntheticCorpus":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        claims = [
            SyntheticClaim(
                id=c["id"],
                text=c["text"],
                gold=VerdictLabel(c["gold"]),
                rounds={
                    int(r): [SearchResult(**res) for res in results]
                    for r, results in c["rounds"].items()
                },
            )
            for c in doc["claims"]
        ]
        return cls(
            claims=claims,
            blacklist_domains=frozenset(doc["blacklist_domains"]),
            max_round=doc["max_round"],
        )


class SyntheticSearchProvider:
    """Strict fixture lookup keyed by exact query text."""

    def __init__(self, corpus: SyntheticCorpus):
        self._fixtures = corpus.query_fixtures()

    def search(self, query: str, top_k: int) -> list[SearchResult]:
        if query not in self._fixtures:
            raise FixtureMissError(search_request_key(query, top_k), kind="search")
        return self._fixtures[query][:top_k]


def _support(i: int, text: str, rank: int, partial_words: int | None = None) -> SearchResult:
    snippet_text = text if partial_words is None else " ".join(text.split()[:partial_words])
    return SearchResult(
        title=f"Fact desk review {i}",
        url=f"https://verified-ledger-{i}-{rank}.example.org/report",
        snippet=f"CONFIRMED: {snippet_text}",
        rank=rank,
    )


def _refute(i: int, text: str, rank: int) -> SearchResult:
    return SearchResult(
        title=f"Correction notice {i}",
        url=f"https://civic-archive-{i}-{rank}.example.net/entry",
        snippet=f"DEBUNKED: {text}",
        rank=rank,
    )


def _decoy(i: int, text: str, rank: int) -> SearchResult:
    return SearchResult(
        title=f"Viral report {i}",
        url=f"https://{BLACKLISTED_DOMAIN}/story-{i}",
        snippet=f"CONFIRMED: {text}",
        rank=rank,
    )


def _filler(i: int, round_index: int, rank: int) -> SearchResult:
    return SearchResult(
        title="Community bulletin",
        url=f"https://local-bulletin-{i}-{round_index}-{rank}.example.com/news",
        snippet="Weekend calendar lists market hours and road maintenance notices",
        rank=rank,
    )


def _claim_text(i: int) -> str:
    place = _PLACES[i]
    count = 3 + i
    year = 2015 + (i % 9)
    return f"the town of {place} opened {count} new public libraries in {year}"


def _resolving_results(i: int, text: str, profile: str) -> list[SearchResult]:
    if profile == "real-plain":
        return [_support(i, text, 1), _support(i, text, 2), _filler(i, 0, 3)]
    if profile == "real-partial":
        return [_support(i, text, 1, partial_words=8), _support(i, text, 2), _filler(i, 0, 3)]
    if profile == "real-trap":  # gold Real, evidence refutes
        return [_refute(i, text, 1), _filler(i, 0, 2)]
    if profile == "fake-plain":
        return [_refute(i, text, 1), _decoy(i, text, 2), _filler(i, 0, 3)]
    if profile == "fake-contested":
        return [_refute(i, text, 1), _refute(i, text, 2), _support(i, text, 3), _filler(i, 0, 4)]
    if profile == "fake-trap":  # gold Fake, evidence supports
        return [_support(i, text, 1), _support(i, text, 2), _filler(i, 0, 3)]
    raise ValueError(profile)


# (index range, gold label, resolve round or None, profile)
_GROUPS = [
    (range(0, 6), VerdictLabel.REAL, 1, "real-plain"),
    (range(6, 8), VerdictLabel.REAL, 1, "real-partial"),
    (range(8, 10), VerdictLabel.REAL, 1, "real-trap"),
    (range(10, 16), VerdictLabel.FAKE, 1, "fake-plain"),
    (range(16, 18), VerdictLabel.FAKE, 1, "fake-contested"),
    (range(18, 20), VerdictLabel.FAKE, 1, "fake-trap"),
    (range(20, 25), VerdictLabel.REAL, 2, "real-plain"),
    (range(25, 30), VerdictLabel.FAKE, 2, "fake-plain"),
    (range(30, 33), VerdictLabel.REAL, 3, "real-plain"),
    (range(33, 36), VerdictLabel.FAKE, 3, "fake-plain"),
    (range(36, 38), VerdictLabel.REAL, None, "real-plain"),
    (range(38, 40), VerdictLabel.FAKE, None, "fake-plain"),
]


def build_corpus() -> SyntheticCorpus:
    claims = []
    for indices, gold, resolve_round, profile in _GROUPS:
        for i in indices:
            text = _claim_text(i)
            rounds: dict[int, list[SearchResult]] = {}
            for r in range(1, MAX_ROUND + 1):
                if resolve_round is not None and r >= resolve_round:
                    rounds[r] = _resolving_results(i, text, profile)
                else:
                    rounds[r] = [_filler(i, r, 1), _filler(i, r, 2)]
            claims.append(SyntheticClaim(id=f"syn-{i:02d}", text=text, gold=gold, rounds=rounds))
    return SyntheticCorpus(claims=claims, blacklist_domains=frozenset({BLACKLISTED_DOMAIN}))
