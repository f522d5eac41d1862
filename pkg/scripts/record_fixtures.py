"""Record replay fixtures for the deterministic service tests.

Runs 20 synthetic claims through the pipeline in offline mode with
recording wrappers attached, producing transcript files that the replay
provider mode serves verbatim. The recorded blacklist file must ship
alongside, since search fixtures hold unfiltered results.
"""

import json
from pathlib import Path

from claimcheck.config import PipelineConfig
from claimcheck.evalharness.synthetic import BLACKLISTED_DOMAIN, SyntheticSearchProvider, build_corpus
from claimcheck.gateway import Gateway, OfflineProvider, RecordingProvider
from claimcheck.pipeline import Claim, VerifierDeps, verify_claim
from claimcheck.retrieval import Blacklist, RecordingSearchProvider

# A spread of resolution depths: 10 one-round, 5 two-round, 3 three-round,
# 2 that never resolve.
CLAIM_INDICES = list(range(0, 10)) + list(range(20, 25)) + list(range(30, 33)) + [36, 37]


def main():
    out_dir = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "replay"
    out_dir.mkdir(parents=True, exist_ok=True)
    llm_path = out_dir / "llm_replay.jsonl"
    search_path = out_dir / "search_replay.jsonl"
    llm_path.unlink(missing_ok=True)
    search_path.unlink(missing_ok=True)

    corpus = build_corpus()
    blacklist = Blacklist(domains=corpus.blacklist_domains)
    deps = VerifierDeps(
        gateway=Gateway(RecordingProvider(OfflineProvider(), llm_path)),
        search=RecordingSearchProvider(SyntheticSearchProvider(corpus), search_path),
        blacklist=blacklist,
    )
    config = PipelineConfig()
    claims = [corpus.claims[i] for i in CLAIM_INDICES]
    for claim in claims:
        verdict = verify_claim(Claim.new(claim.text), config, deps)
        print(f"{claim.id}: {verdict.label.value} ({verdict.confidence}) in {verdict.iterations_used}")

    (out_dir / "blacklist.txt").write_text(BLACKLISTED_DOMAIN + "\n", encoding="utf-8")
    (out_dir / "claims.json").write_text(
        json.dumps([{"id": c.id, "text": c.text} for c in claims], indent=1),
        encoding="utf-8",
    )
    print(f"fixtures written to {out_dir}")


if __name__ == "__main__":
    main()
