"""Golden-file checks: rendering substitutes slots and nothing else."""

import pytest

from claimcheck.gateway.prompts import SLOTS, TEMPLATES, PromptKind, render_prompt

from conftest import GOLDENS

GOLDEN_NAMES = {
    PromptKind.CLAIM_EXTRACTION: "claim_extraction.txt",
    PromptKind.QUERY_GENERATION: "query_generation.txt",
    PromptKind.EVIDENCE_EVALUATION: "evidence_evaluation.txt",
    PromptKind.DECISION: "decision.txt",
    PromptKind.EXPLANATION: "explanation.txt",
    PromptKind.QUERY_REFORMULATION: "query_reformulation.txt",
}


def golden_text(kind: PromptKind) -> str:
    return (GOLDENS / "prompts" / GOLDEN_NAMES[kind]).read_text(encoding="utf-8")


@pytest.mark.parametrize("kind", list(PromptKind))
def test_template_matches_golden_bytes(kind):
    assert TEMPLATES[kind] == golden_text(kind)


@pytest.mark.parametrize("kind", list(PromptKind))
def test_render_byte_matches_golden_modulo_slots(kind):
    slots = {name: f"<<{name}-value>>" for name in SLOTS[kind]}
    rendered = render_prompt(kind, slots)
    expected = golden_text(kind)
    for name, value in slots.items():
        expected = expected.replace("{" + name + "}", value)
    assert rendered == expected


def test_exactly_six_prompt_kinds():
    assert len(PromptKind) == 6
    assert set(TEMPLATES) == set(PromptKind)
    assert set(SLOTS) == set(PromptKind)


def test_render_rejects_missing_and_unknown_slots():
    with pytest.raises(ValueError, match="missing"):
        render_prompt(PromptKind.QUERY_GENERATION, {})
    with pytest.raises(ValueError, match="unknown"):
        render_prompt(PromptKind.QUERY_GENERATION, {"claim": "x", "extra": "y"})


def test_substitution_is_single_pass():
    # A slot value containing another slot marker must stay literal.
    rendered = render_prompt(
        PromptKind.EVIDENCE_EVALUATION,
        {"search_result": "mentions {claim} verbatim", "claim": "the moon is cheese"},
    )
    assert "mentions {claim} verbatim" in rendered
    assert rendered.count("the moon is cheese") == 1


def test_templates_keep_literal_json_braces():
    rendered = render_prompt(PromptKind.CLAIM_EXTRACTION, {"content": "c"})
    assert '{"key_claim": "XXX"}' in rendered
    rendered = render_prompt(PromptKind.DECISION, {"claim": "c", "analyses_text": "a"})
    assert '"decision": "real" or "fake" or "NEI",' in rendered
