"""Gateway operations against echo, scripted, offline, and replay providers."""

import json
import logging
import threading

import pytest
from hypothesis import given, strategies as st

from claimcheck.errors import ContractError, FixtureMissError, PayloadParseError
from claimcheck.gateway import (
    Gateway,
    OfflineProvider,
    PromptKind,
    RecordingProvider,
    ReplayChatProvider,
    aggregate_judgments,
    request_key,
    serialize_analyses,
)
from claimcheck.gateway.offline import overlap_judge
from claimcheck.gateway.ops import build_evidence_digest, digest_round, parse_analyses
from claimcheck.gateway.types import EvidenceJudgment, KeyClaim, SearchQuery
from claimcheck.retrieval import EvidenceText
from claimcheck.types import Stance, VerdictLabel


class EchoProvider:
    """Reflects slot values back as well-formed payloads."""

    def complete(self, request):
        kind, slots = request.kind, request.slots
        if kind is PromptKind.CLAIM_EXTRACTION:
            return json.dumps({"key_claim": slots["content"]})
        if kind is PromptKind.QUERY_GENERATION:
            return json.dumps({"query": slots["claim"]})
        if kind is PromptKind.QUERY_REFORMULATION:
            return json.dumps({"query": slots["claim"]})
        if kind is PromptKind.EXPLANATION:
            return json.dumps({"explanation": f"Explained: {slots['claim']}"})
        raise AssertionError(f"echo provider got {kind}")


class ScriptedProvider:
    """Returns canned raw payloads per prompt kind."""

    def __init__(self, payloads: dict):
        self.payloads = payloads
        self.calls = []

    def complete(self, request):
        self.calls.append(request)
        return self.payloads[request.kind]


def evidence(url="https://src.example/a", text="T — S"):
    return EvidenceText(source_url=url, text=text, mode="snippet-only")


class TestExtractAndQuery:
    def test_echo_round_trip(self):
        gw = Gateway(EchoProvider())
        key_claim = gw.extract_key_claim("The sky is blue")
        assert key_claim.text == "The sky is blue"
        query = gw.generate_query(key_claim)
        assert query.text == key_claim.text
        assert query.origin == "initial" and query.round == 1

    def test_empty_payload_object_is_parse_error(self):
        gw = Gateway(ScriptedProvider({PromptKind.CLAIM_EXTRACTION: "{}"}))
        with pytest.raises(PayloadParseError):
            gw.extract_key_claim("content")

    def test_empty_query_string_is_parse_error(self):
        gw = Gateway(ScriptedProvider({PromptKind.QUERY_GENERATION: '{"query": ""}'}))
        with pytest.raises(PayloadParseError):
            gw.generate_query(KeyClaim("c"))

    def test_empty_content_violates_contract(self):
        with pytest.raises(ContractError):
            Gateway(EchoProvider()).extract_key_claim("   ")


class TestJudgeEvidence:
    def _judge(self, payload):
        gw = Gateway(ScriptedProvider({PromptKind.EVIDENCE_EVALUATION: json.dumps(payload)}))
        return gw.judge_evidence(KeyClaim("claim"), evidence())

    def test_contradict_maps_to_refute(self):
        j = self._judge({"support_or_contradict_or_unrelated": "contradict", "confidence": 60, "rationale": "r"})
        assert j.stance is Stance.REFUTE

    def test_negate_and_baseless_normalization(self):
        assert self._judge(
            {"support_or_contradict_or_unrelated": "negate", "confidence": 1, "rationale": ""}
        ).stance is Stance.REFUTE
        assert self._judge(
            {"support_or_contradict_or_unrelated": "baseless", "confidence": 1, "rationale": ""}
        ).stance is Stance.UNRELATED

    def test_support_passthrough_with_confidence(self):
        j = self._judge({"support_or_contradict_or_unrelated": "support", "confidence": 87, "rationale": "ok"})
        assert j.stance is Stance.SUPPORT and j.confidence == 87
        assert j.source_url == "https://src.example/a"

    def test_unknown_stance_rejected(self):
        with pytest.raises(PayloadParseError):
            self._judge({"support_or_contradict_or_unrelated": "perhaps", "confidence": 1})


class TestDecide:
    def test_empty_judgments_short_circuit(self):
        provider = ScriptedProvider({})
        label, confidence = Gateway(provider).decide(KeyClaim("c"), [])
        assert (label, confidence) == (VerdictLabel.NEI, 0)
        assert provider.calls == []  # vacuous evidence never hits the provider

    def test_decision_parsing_and_clamping(self, caplog):
        gw = Gateway(ScriptedProvider({PromptKind.DECISION: '{"decision":"fake","confidence":110}'}))
        judgments = [EvidenceJudgment(Stance.SUPPORT, 80, "r", "https://a.example")]
        with caplog.at_level(logging.WARNING):
            label, confidence = gw.decide(KeyClaim("c"), judgments)
        assert (label, confidence) == (VerdictLabel.FAKE, 100)
        assert "clamped" in caplog.text

    def test_unknown_label_is_parse_error(self):
        gw = Gateway(ScriptedProvider({PromptKind.DECISION: '{"decision":"dunno","confidence":10}'}))
        with pytest.raises(PayloadParseError):
            gw.decide(KeyClaim("c"), [EvidenceJudgment(Stance.SUPPORT, 1, "", "https://a.example")])

    def test_analyses_slot_is_canonically_sorted(self):
        provider = ScriptedProvider({PromptKind.DECISION: '{"decision":"real","confidence":70}'})
        gw = Gateway(provider)
        judgments = [
            EvidenceJudgment(Stance.SUPPORT, 10, "z", "https://zzz.example"),
            EvidenceJudgment(Stance.REFUTE, 20, "a", "https://aaa.example"),
        ]
        gw.decide(KeyClaim("c"), judgments)
        gw.decide(KeyClaim("c"), list(reversed(judgments)))
        slots = [call.slots["analyses_text"] for call in provider.calls]
        assert slots[0] == slots[1]
        assert slots[0].index("aaa.example") < slots[0].index("zzz.example")


class TestExplain:
    def test_echo_contains_claim(self):
        text = Gateway(EchoProvider()).explain(KeyClaim("water is wet"), VerdictLabel.REAL, 80)
        assert "water is wet" in text

    def test_empty_explanation_is_parse_error(self):
        gw = Gateway(ScriptedProvider({PromptKind.EXPLANATION: '{"explanation": ""}'}))
        with pytest.raises(PayloadParseError):
            gw.explain(KeyClaim("c"), VerdictLabel.FAKE, 10)


class TestReformulate:
    def test_round_one_violates_contract(self):
        with pytest.raises(ContractError):
            Gateway(EchoProvider()).reformulate_query(
                KeyClaim("c"), "after round 1", 1, SearchQuery("q")
            )

    def test_echo_identical_query_retries_once_then_warns(self, caplog):
        provider = ScriptedProvider({PromptKind.QUERY_REFORMULATION: '{"query": "same"}'})
        gw = Gateway(provider)
        with caplog.at_level(logging.WARNING):
            query = gw.reformulate_query(KeyClaim("c"), "after round 1", 2, SearchQuery("same"))
        assert query.text == "same"
        assert query.origin == "reformulated" and query.round == 2
        assert len(provider.calls) == 2
        assert "degenerate reformulation" in caplog.text

    def test_distinct_query_returns_without_retry(self):
        provider = ScriptedProvider({PromptKind.QUERY_REFORMULATION: '{"query": "fresh"}'})
        gw = Gateway(provider)
        query = gw.reformulate_query(KeyClaim("c"), "after round 1", 2, SearchQuery("old"))
        assert query.text == "fresh"
        assert len(provider.calls) == 1


class TestRequestKey:
    def test_stable_for_identical_inputs(self):
        a = request_key(PromptKind.DECISION, "gpt-4", {"claim": "c", "analyses_text": "t"})
        b = request_key(PromptKind.DECISION, "gpt-4", {"claim": "c", "analyses_text": "t"})
        assert a == b

    @given(st.text(max_size=30), st.text(max_size=30))
    def test_any_input_change_changes_key(self, one, two):
        key_one = request_key(PromptKind.QUERY_GENERATION, "gpt-4", {"claim": one})
        key_two = request_key(PromptKind.QUERY_GENERATION, "gpt-4", {"claim": two})
        assert (key_one == key_two) == (one == two)

    def test_kind_and_model_are_part_of_the_key(self):
        slots = {"claim": "c"}
        assert request_key(PromptKind.QUERY_GENERATION, "gpt-4", slots) != request_key(
            PromptKind.QUERY_REFORMULATION, "gpt-4", {"claim": "c", "evidence_digest": ""}
        )
        assert request_key(PromptKind.QUERY_GENERATION, "gpt-4", slots) != request_key(
            PromptKind.QUERY_GENERATION, "gpt-3.5-turbo", slots
        )


class TestReplayClosure:
    def test_recorded_run_replays_bit_identically(self, tmp_path):
        path = tmp_path / "transcripts.jsonl"
        recording_gw = Gateway(RecordingProvider(OfflineProvider(), path))
        key_claim = recording_gw.extract_key_claim("the harbor bridge opened in 1998")
        query = recording_gw.generate_query(key_claim)
        judgment = recording_gw.judge_evidence(
            key_claim, evidence(text="Review — CONFIRMED: the harbor bridge opened in 1998")
        )
        decision = recording_gw.decide(key_claim, [judgment])
        explanation = recording_gw.explain(key_claim, decision[0], decision[1])

        replay_gw = Gateway(ReplayChatProvider.load(path))
        assert replay_gw.extract_key_claim("the harbor bridge opened in 1998") == key_claim
        assert replay_gw.generate_query(key_claim) == query
        assert replay_gw.judge_evidence(
            key_claim, evidence(text="Review — CONFIRMED: the harbor bridge opened in 1998")
        ) == judgment
        assert replay_gw.decide(key_claim, [judgment]) == decision
        assert replay_gw.explain(key_claim, decision[0], decision[1]) == explanation

    def test_unknown_key_error_names_the_key(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        gw = Gateway(ReplayChatProvider.load(path))
        with pytest.raises(FixtureMissError) as err:
            gw.generate_query(KeyClaim("never recorded"))
        assert err.value.request_key in str(err.value)

    def test_concurrent_recording_is_line_atomic(self, tmp_path):
        path = tmp_path / "transcripts.jsonl"
        gw = Gateway(RecordingProvider(OfflineProvider(), path))

        def work(i):
            gw.generate_query(KeyClaim(f"claim number {i}"))

        threads = [threading.Thread(target=work, args=(i,)) for i in range(20)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        lines = path.read_text().splitlines()
        assert len(lines) == 20
        for line in lines:
            json.loads(line)  # every line is standalone valid JSON


class TestOfflineAggregation:
    def test_weighted_majority(self):
        judgments = [
            EvidenceJudgment(Stance.SUPPORT, 80, "", "https://a.example"),
            EvidenceJudgment(Stance.SUPPORT, 60, "", "https://b.example"),
            EvidenceJudgment(Stance.REFUTE, 50, "", "https://c.example"),
            EvidenceJudgment(Stance.UNRELATED, 90, "", "https://d.example"),
        ]
        label, confidence = aggregate_judgments(judgments)
        assert label is VerdictLabel.REAL
        assert confidence == round(100 * 140 / 190)

    def test_tie_and_empty_are_nei_zero(self):
        assert aggregate_judgments([]) == (VerdictLabel.NEI, 0)
        tie = [
            EvidenceJudgment(Stance.SUPPORT, 50, "", "https://a.example"),
            EvidenceJudgment(Stance.REFUTE, 50, "", "https://b.example"),
        ]
        assert aggregate_judgments(tie) == (VerdictLabel.NEI, 0)

    def test_refute_majority_is_fake(self):
        judgments = [EvidenceJudgment(Stance.REFUTE, 90, "", "https://a.example")]
        assert aggregate_judgments(judgments) == (VerdictLabel.FAKE, 100)

    @given(
        st.lists(
            st.tuples(
                st.sampled_from(list(Stance)),
                st.integers(0, 100),
            ),
            max_size=12,
        )
    )
    def test_order_invariance(self, pairs):
        judgments = [
            EvidenceJudgment(stance, conf, "", f"https://s{i}.example")
            for i, (stance, conf) in enumerate(pairs)
        ]
        forward = aggregate_judgments(judgments)
        backward = aggregate_judgments(list(reversed(judgments)))
        assert forward == backward


class TestAnalysesRoundTrip:
    def test_serialize_then_parse(self):
        judgments = [
            EvidenceJudgment(Stance.SUPPORT, 80, "multi\nline rationale", "https://b.example"),
            EvidenceJudgment(Stance.REFUTE, 30, "plain", "https://a.example"),
        ]
        parsed = parse_analyses(serialize_analyses(judgments))
        assert [j.source_url for j in parsed] == ["https://a.example", "https://b.example"]
        assert parsed[1].rationale == "multi line rationale"
        assert parsed[0].stance is Stance.REFUTE

    def test_digest_header_round_trips(self):
        digest = build_evidence_digest([evidence()], rounds_completed=2)
        assert digest.startswith("after round 2")
        assert digest_round(digest) == 2


class TestOverlapJudge:
    def test_marker_with_overlap_supports(self):
        token, confidence, _ = overlap_judge("the dam opened in 1998", "CONFIRMED: the dam opened in 1998")
        assert token == "support" and confidence == 100

    def test_marker_without_overlap_is_baseless(self):
        token, _, _ = overlap_judge("the dam opened in 1998", "CONFIRMED: unrelated topic entirely here")
        assert token == "baseless"

    def test_refute_marker(self):
        token, _, _ = overlap_judge("the dam opened in 1998", "DEBUNKED: the dam opened in 1998")
        assert token == "negate"
