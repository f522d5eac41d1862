"""Evaluation command line.

    claimcheck-eval run --dataset PATH --format liar-tsv --variant full \
        --fixtures DIR --out DIR
    claimcheck-eval sweep --rounds 6 --dataset ... --fixtures DIR --out DIR
    claimcheck-eval latency --dataset ... --fixtures DIR --out DIR

Every flag is mirrored by a key in the ``eval`` config section (and
``pipeline`` keys set tau / max_iters); flags win over the config file.
Exit status is nonzero on any error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from ..config import AppConfig, load_config
from .datasets import FORMATS, load_dataset
from .metrics import NEI_SCORING_NOTE
from .runner import (
    VARIANTS,
    DelayingChatProvider,
    DelayingSearchProvider,
    build_eval_deps,
    measure_latency,
    run_eval,
    sweep_rounds,
    variant_model,
    write_sweep,
)

DEFAULT_LABEL_MAP = {"true": "Real", "real": "Real", "false": "Fake", "fake": "Fake"}


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="YAML config file")
    parser.add_argument("--dataset", help="dataset file path")
    parser.add_argument("--format", choices=FORMATS, help="dataset format")
    parser.add_argument("--label-map", help="inline JSON mapping source labels to Real/Fake")
    parser.add_argument("--fixtures", help="fixtures directory (corpus.json or replay JSONL)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--tau", type=int, help="confidence threshold")
    parser.add_argument("--max-iters", type=int, help="iteration budget")
    parser.add_argument("--claim-workers", type=int, help="parallel claims")
    parser.add_argument("--expected-counts", help="e.g. Real=399,Fake=345")
    parser.add_argument("--lenient-labels", action="store_true",
                        help="skip unmappable labels instead of failing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="claimcheck-eval")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="evaluate one variant over a dataset")
    _add_common(run_p)
    run_p.add_argument("--variant", choices=VARIANTS, help="pipeline variant")

    sweep_p = sub.add_parser("sweep", help="evaluate across iteration budgets 1..K")
    _add_common(sweep_p)
    sweep_p.add_argument("--rounds", type=int, help="largest iteration budget K")

    lat_p = sub.add_parser("latency", help="measure per-claim wall time")
    _add_common(lat_p)
    lat_p.add_argument("--delay-ms", type=int, help="injected per-provider-call delay")
    lat_p.add_argument("--limit", type=int, default=0, help="cap the number of claims")
    return parser


def _settings(args) -> tuple[AppConfig, dict]:
    config = load_config(args.config) if args.config else AppConfig()
    ev = config.eval

    def pick(flag_value, config_value):
        return flag_value if flag_value is not None else config_value

    merged = {
        "dataset": pick(args.dataset, ev.dataset),
        "format": pick(args.format, ev.format),
        "fixtures": pick(args.fixtures, ev.fixtures),
        "out": pick(args.out, ev.out),
        "variant": pick(getattr(args, "variant", None), ev.variant),
        "rounds": pick(getattr(args, "rounds", None), ev.rounds),
        "delay_ms": pick(getattr(args, "delay_ms", None), ev.delay_ms),
        "claim_workers": pick(args.claim_workers, ev.claim_workers),
        "strict": not args.lenient_labels and ev.strict_labels,
    }
    raw_map = args.label_map if args.label_map is not None else ev.label_map
    merged["label_map"] = json.loads(raw_map) if raw_map else dict(DEFAULT_LABEL_MAP)
    if not merged["dataset"]:
        raise SystemExit("--dataset is required (flag or eval.dataset config key)")
    if not merged["fixtures"]:
        raise SystemExit("--fixtures is required (flag or eval.fixtures config key)")

    if args.tau is not None:
        config.pipeline = dataclasses.replace(config.pipeline, tau=args.tau)
    if getattr(args, "max_iters", None) is not None:
        config.pipeline = dataclasses.replace(config.pipeline, max_iters=args.max_iters)
    return config, merged


def _parse_expected(raw: str | None) -> dict[str, int] | None:
    if not raw:
        return None
    counts = {}
    for part in raw.split(","):
        label, _, value = part.partition("=")
        counts[label.strip()] = int(value)
    return counts


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config, s = _settings(args)
        dataset = load_dataset(
            s["dataset"],
            s["format"],
            s["label_map"],
            strict=s["strict"],
            expected_counts=_parse_expected(args.expected_counts),
        )
        print(
            f"loaded {len(dataset)} claims ({dataset.counts()}) "
            f"skipped_rows={dataset.skipped_rows} skipped_labels={dataset.skipped_labels}"
        )
        print(NEI_SCORING_NOTE)
        model = variant_model(config.gateway.model, s["variant"])
        deps = build_eval_deps(s["fixtures"], model=model)
        pipeline_config = config.runtime_pipeline()

        if args.command == "run":
            run = run_eval(dataset.claims, pipeline_config, s["variant"], deps, s["claim_workers"])
            run.write(s["out"])
            print(f"variant={s['variant']}")
            print(run.report.table())
        elif args.command == "sweep":
            results = sweep_rounds(
                dataset.claims, pipeline_config, deps, s["rounds"], s["claim_workers"]
            )
            write_sweep(results, s["out"])
            print(f"{'rounds':>6} {'f1_real':>9} {'f1_fake':>9} {'f1_macro':>9}")
            for r, report in results:
                print(f"{r:>6} {report.real.f1:>9.4f} {report.fake.f1:>9.4f} {report.macro_f1:>9.4f}")
        elif args.command == "latency":
            if s["delay_ms"]:
                delay = s["delay_ms"] / 1000.0
                deps.gateway.provider = DelayingChatProvider(deps.gateway.provider, delay)
                deps.search = DelayingSearchProvider(deps.search, delay)
            claims = dataset.claims[: args.limit] if args.limit else dataset.claims
            stats = measure_latency(claims, pipeline_config, deps, s["claim_workers"])
            out = Path(s["out"])
            out.mkdir(parents=True, exist_ok=True)
            (out / "latency.json").write_text(json.dumps(stats, indent=1), encoding="utf-8")
            print(json.dumps(stats, indent=1))
        return 0
    except SystemExit:
        raise
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
