"""Regenerate data/blacklist_sample.txt.

The shipped list is a deterministic sample standing in for a curated
list of unreliable publishers; deployments point search.blacklist_path
at their own file. Exactly 1044 valid entries are written.
"""

from pathlib import Path

TARGET = 1044

PREFIXES = [
    "daily", "real", "true", "patriot", "liberty", "global", "national",
    "viral", "breaking", "insider", "freedom", "rapid", "prime", "alpha",
    "civic", "sovereign", "beacon", "vanguard",
]
STEMS = [
    "news", "report", "times", "post", "herald", "tribune", "wire",
    "journal", "gazette", "chronicle", "bulletin", "dispatch",
]
TLDS = [".com", ".net", ".org", ".info", ".co"]


def domains() -> list[str]:
    out = []
    for prefix in PREFIXES:
        for stem in STEMS:
            for tld in TLDS:
                out.append(f"{prefix}{stem}{tld}")
    return sorted(set(out))[:TARGET]


def main():
    entries = domains()
    assert len(entries) == TARGET, len(entries)
    path = Path(__file__).resolve().parent.parent / "data" / "blacklist_sample.txt"
    lines = [
        "# Sample list of unreliable publisher domains (synthetic stand-in).",
        "# One registrable domain per line; '#' starts a comment.",
        "",
    ] + entries
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(entries)} domains to {path}")


if __name__ == "__main__":
    main()
