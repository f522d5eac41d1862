"""Write the synthetic evaluation corpus under data/synthetic_corpus/.

Produces corpus.json (search fixtures keyed by query) and claims.csv
(the labeled dataset the evaluation CLI consumes).
"""

import csv
from pathlib import Path

from claimcheck.evalharness.synthetic import build_corpus


def main():
    out_dir = Path(__file__).resolve().parent.parent / "data" / "synthetic_corpus"
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = build_corpus()
    corpus.save(out_dir / "corpus.json")
    with (out_dir / "claims.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "text", "label"])
        for claim in corpus.claims:
            writer.writerow([claim.id, claim.text, claim.gold.value.lower()])
    print(f"wrote {len(corpus.claims)} claims to {out_dir}")


if __name__ == "__main__":
    main()
