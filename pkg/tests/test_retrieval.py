"""Blacklist loading, source filtering, evidence extraction, search replay."""

import json
import logging

import pytest
from hypothesis import given, strategies as st

from claimcheck.errors import FixtureMissError
from claimcheck.retrieval import (
    Blacklist,
    EvidenceText,
    ReplaySearchProvider,
    SearchResult,
    extract_relevant_text,
    filter_sources,
    load_blacklist,
    search_request_key,
    visible_text,
)

from conftest import DATA
from oracles import suffix_filter


def result(url, rank=1, title="T", snippet="S"):
    return SearchResult(title=title, url=url, snippet=snippet, rank=rank)


class TestBlacklistLoading:
    def test_basic_file(self, tmp_path):
        path = tmp_path / "bl.txt"
        path.write_text("# header\nFakesite.com\n\n  hoaxwire.net  \nfakesite.com\n")
        blacklist = load_blacklist(path)
        assert blacklist.domains == {"fakesite.com", "hoaxwire.net"}
        assert blacklist.source_path == str(path)

    def test_duplicates_case_insensitive(self, tmp_path):
        path = tmp_path / "bl.txt"
        path.write_text("A.com\na.com\n")
        assert len(load_blacklist(path)) == 1

    def test_comments_only_warns_and_loads_empty(self, tmp_path, caplog):
        path = tmp_path / "bl.txt"
        path.write_text("# one\n# two\n")
        with caplog.at_level(logging.WARNING):
            blacklist = load_blacklist(path)
        assert len(blacklist) == 0
        assert "no valid entries" in caplog.text

    def test_missing_file_raises(self, tmp_path):
        with pytest.raises(OSError):
            load_blacklist(tmp_path / "absent.txt")

    def test_shipped_sample_has_1044_entries(self):
        assert len(load_blacklist(DATA / "blacklist_sample.txt")) == 1044


class TestFilterSources:
    def test_subdomain_and_exact_match(self):
        blacklist = Blacklist(domains=frozenset({"fakesite.com"}))
        results = [
            result("https://realnews.org/a", 1),
            result("https://fakesite.com/b", 2),
            result("https://sub.fakesite.com/c", 3),
        ]
        kept = filter_sources(results, blacklist)
        assert [r.url for r in kept] == ["https://realnews.org/a"]

    def test_empty_blacklist_is_identity(self):
        results = [result(f"https://site{i}.com", i + 1) for i in range(5)]
        assert filter_sources(results, Blacklist(domains=frozenset())) == results

    def test_all_blacklisted(self):
        blacklist = Blacklist(domains=frozenset({"bad.com"}))
        results = [result("https://bad.com/1", 1), result("https://x.bad.com/2", 2)]
        assert filter_sources(results, blacklist) == []

    def test_label_boundary_not_substring(self):
        blacklist = Blacklist(domains=frozenset({"fakesite.com"}))
        kept = filter_sources([result("https://notfakesite.com/a")], blacklist)
        assert len(kept) == 1

    def test_case_insensitive_host(self):
        blacklist = Blacklist(domains=frozenset({"fakesite.com"}))
        assert filter_sources([result("https://FAKESITE.COM/a")], blacklist) == []

    def test_unparseable_url_fails_closed(self):
        blacklist = Blacklist(domains=frozenset())
        bad = [result("not a url"), result("http://"), result("https://[bad/")]
        assert filter_sources(bad, blacklist) == []

    def test_port_is_ignored(self):
        blacklist = Blacklist(domains=frozenset({"fakesite.com"}))
        assert filter_sources([result("https://fakesite.com:8443/x")], blacklist) == []

    @given(
        st.lists(
            st.sampled_from(
                [
                    "https://fakesite.com/a",
                    "https://news.fakesite.com/b",
                    "https://notfakesite.com/c",
                    "https://realnews.org/d",
                    "https://cdn.realnews.org/e",
                    "https://hoaxwire.net/f",
                ]
            ),
            max_size=20,
        ),
        st.sets(st.sampled_from(["fakesite.com", "hoaxwire.net", "realnews.org"]), max_size=3),
    )
    def test_matches_suffix_oracle_and_is_idempotent(self, urls, domains):
        blacklist = Blacklist(domains=frozenset(domains))
        results = [result(u, i + 1) for i, u in enumerate(urls)]
        kept = filter_sources(results, blacklist)
        assert [r.url for r in kept] == suffix_filter(urls, domains)
        assert filter_sources(kept, blacklist) == kept  # idempotent
        # Order preservation: ranks are a subsequence of the input ranks.
        ranks = [r.rank for r in kept]
        assert ranks == sorted(ranks)

    @given(
        st.sets(st.sampled_from(["fakesite.com", "hoaxwire.net"]), max_size=2),
        st.sets(st.sampled_from(["fakesite.com", "hoaxwire.net", "extra.org"]), max_size=3),
    )
    def test_monotone_in_blacklist(self, smaller, additions):
        urls = [
            "https://fakesite.com/a",
            "https://sub.hoaxwire.net/b",
            "https://extra.org/c",
            "https://clean.example/d",
        ]
        results = [result(u, i + 1) for i, u in enumerate(urls)]
        small_kept = filter_sources(results, Blacklist(domains=frozenset(smaller)))
        big_kept = filter_sources(results, Blacklist(domains=frozenset(smaller | additions)))
        assert set(r.url for r in big_kept) <= set(r.url for r in small_kept)


class TestExtractRelevantText:
    def test_snippet_only_concatenation(self):
        ev = extract_relevant_text(result("https://a.com", title="T", snippet="S"))
        assert ev.text == "T — S"
        assert ev.mode == "snippet-only"
        assert ev.source_url == "https://a.com"

    def test_empty_title_or_snippet(self):
        assert extract_relevant_text(result("https://a.com", title="", snippet="S")).text == "S"
        assert extract_relevant_text(result("https://a.com", title="T", snippet="")).text == "T"
        # Both empty falls back to the URL so the text invariant holds.
        assert extract_relevant_text(result("https://a.com", title="", snippet="")).text == "https://a.com"

    def test_full_page_extraction_and_truncation(self):
        body = "word " * 20000
        page = f"<html><head><script>skip()</script></head><body><p>{body}</p></body></html>"
        ev = extract_relevant_text(
            result("https://a.com"), "full-page", fetcher=lambda url: page, char_budget=8000
        )
        assert ev.mode == "full-page"
        assert len(ev.text) == 8000
        assert ev.text == visible_text(page)[:8000]
        assert "skip()" not in ev.text

    def test_full_page_fetch_failure_falls_back(self):
        def failing(url):
            raise OSError("404")

        ev = extract_relevant_text(result("https://a.com"), "full-page", fetcher=failing)
        assert ev.mode == "snippet-only"
        assert ev.text == "T — S"

    def test_invariants(self):
        with pytest.raises(ValueError):
            EvidenceText(source_url="https://a.com", text="", mode="snippet-only")
        with pytest.raises(ValueError):
            EvidenceText(source_url="https://a.com", text="x", mode="bogus")


class TestReplaySearch:
    def _write_fixture(self, tmp_path, query, results, top_k=10):
        path = tmp_path / "search.jsonl"
        record = {
            "request_key": search_request_key(query, top_k),
            "query": query,
            "top_k": top_k,
            "results": [r.to_dict() for r in results],
        }
        path.write_text(json.dumps(record) + "\n")
        return path

    def test_fixture_results_in_rank_order(self, tmp_path):
        results = [result(f"https://r{i}.com", i + 1) for i in range(10)]
        path = self._write_fixture(tmp_path, "q", results)
        provider = ReplaySearchProvider.load(path)
        got = provider.search("q", 10)
        assert [r.rank for r in got] == list(range(1, 11))

    def test_top_k_truncation(self, tmp_path):
        results = [result(f"https://r{i}.com", i + 1) for i in range(10)]
        path = self._write_fixture(tmp_path, "q", results)
        # Same stored response truncated to the first 3 by rank.
        provider = ReplaySearchProvider({search_request_key("q", 3): results}, strict=True)
        assert [r.rank for r in provider.search("q", 3)] == [1, 2, 3]
        assert ReplaySearchProvider.load(path).search("q", 10)[:3] == results[:3]

    def test_strict_miss_names_request_key(self, tmp_path):
        provider = ReplaySearchProvider({}, strict=True)
        with pytest.raises(FixtureMissError) as err:
            provider.search("unknown", 10)
        assert search_request_key("unknown", 10) in str(err.value)

    def test_non_strict_returns_empty(self):
        assert ReplaySearchProvider({}, strict=False).search("unknown", 10) == []

    def test_request_key_depends_on_query_and_top_k(self):
        assert search_request_key("a", 10) != search_request_key("b", 10)
        assert search_request_key("a", 10) != search_request_key("a", 3)
        assert search_request_key("a", 10) == search_request_key("a", 10)
