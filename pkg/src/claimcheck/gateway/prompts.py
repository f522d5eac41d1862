"""Prompt templates and rendering.

Each template carries named slots written as ``{name}``. Rendering
substitutes exactly the declared slots in a single pass and leaves every
other character untouched, so the rendered prompt byte-matches the
template modulo slot values (the golden tests pin this).
"""

from __future__ import annotations

import re
from enum import Enum


class PromptKind(Enum):
    CLAIM_EXTRACTION = "ClaimExtraction"
    QUERY_GENERATION = "QueryGeneration"
    EVIDENCE_EVALUATION = "EvidenceEvaluation"
    DECISION = "Decision"
    EXPLANATION = "Explanation"
    QUERY_REFORMULATION = "QueryReformulation"


CLAIM_EXTRACTION_TEMPLATE = """\
Given the input content below, please summarize the single key claim.
Input content: {content}
Please output with the following JSON format: {"key_claim": "XXX"}"""

QUERY_GENERATION_TEMPLATE = """\
Given the claim below, please generate a Google query which
can be used to search content to verify this claim.
Claim: {claim}
Please output with the following JSON format: {"query": "XXX"}"""

EVIDENCE_EVALUATION_TEMPLATE = """\
Below is one web search result:
    Search Result:  {search_result}
    Below is a claim to be verified:  Claim: {claim}
    Please perform the following rules to generate an output with this JSON format:
    {"support_or_contradict_or_unrelated": "support" or "contradict" or "unrelated", "confidence": XX (0-100), "rationale": "XXX"}
 Rule 1: if the search result content supports the claim,
set the field as "support", and offer a confidence score and rationale.
Rule 2: if the content negates the claim, set the field as "negate".
Rule 3: if it cannot support or negate, use "baseless".
To clarify: if the result does not contradict the claim,
but lacks supporting info, use "baseless" rather than "negate"."""

DECISION_TEMPLATE = """\
You are an assistant that determines the veracity of a claim based on multiple
pieces of evidence. Claim: {claim}
Evidence and Analysis: {analyses_text}
Based on the provided web search results, analyze whether the information
has enough evidence to decide whether the statement is real or fake.
- If you conclude the statement is true, classify it as "real".
- If you conclude the statement is false, classify it as "fake".
- If the evidence is mixed or insufficient to make a determination,
  classify it as "NEI" (Not Enough Information).
Provide your answer in the following JSON format:
{
    "decision": "real" or "fake" or "NEI",
    "confidence": XX  # Confidence score as a percentage between 0 and 100
}"""

EXPLANATION_TEMPLATE = """\
You are an assistant that generates an explanation for a decision based solely
on the text of the claim and the classification.
Claim: {claim}
Decision: {decision}
Confidence:{confidence}%
Based on the claim and the decision, provide a detailed explanation for the classification.
The explanation should include reasoning behind the decision,
including any relevant context that could support the decision.
If the decision is "real" or "fake", explain why.
Provide your answer in the following JSON format:
{ "explanation": "<explanation text>" }"""

# No reformulation prompt exists upstream; this reuses the query-generation
# wording plus a digest of evidence gathered so far and an instruction to
# try something different.
QUERY_REFORMULATION_TEMPLATE = """\
Given the claim below, please generate a Google query which
can be used to search content to verify this claim.
Claim: {claim}
Evidence collected so far:
{evidence_digest}
The evidence above was not sufficient for a confident decision.
Please generate a query different from the ones already tried.
Please output with the following JSON format: {"query": "XXX"}"""


TEMPLATES: dict[PromptKind, str] = {
    PromptKind.CLAIM_EXTRACTION: CLAIM_EXTRACTION_TEMPLATE,
    PromptKind.QUERY_GENERATION: QUERY_GENERATION_TEMPLATE,
    PromptKind.EVIDENCE_EVALUATION: EVIDENCE_EVALUATION_TEMPLATE,
    PromptKind.DECISION: DECISION_TEMPLATE,
    PromptKind.EXPLANATION: EXPLANATION_TEMPLATE,
    PromptKind.QUERY_REFORMULATION: QUERY_REFORMULATION_TEMPLATE,
}

SLOTS: dict[PromptKind, tuple[str, ...]] = {
    PromptKind.CLAIM_EXTRACTION: ("content",),
    PromptKind.QUERY_GENERATION: ("claim",),
    PromptKind.EVIDENCE_EVALUATION: ("search_result", "claim"),
    PromptKind.DECISION: ("claim", "analyses_text"),
    PromptKind.EXPLANATION: ("claim", "decision", "confidence"),
    PromptKind.QUERY_REFORMULATION: ("claim", "evidence_digest"),
}


def render_prompt(kind: PromptKind, slots: dict[str, str]) -> str:
    """Fill the template for ``kind`` with the given slot values.

    All declared slots must be provided; extra keys are rejected. The
    substitution is a single pass over the template, so slot values are
    never re-scanned (a value containing ``{claim}`` stays literal).
    """
    declared = SLOTS[kind]
    missing = [name for name in declared if name not in slots]
    if missing:
        raise ValueError(f"{kind.value} prompt missing slots: {missing}")
    extra = [name for name in slots if name not in declared]
    if extra:
        raise ValueError(f"{kind.value} prompt got unknown slots: {extra}")
    pattern = re.compile("|".join(r"\{%s\}" % re.escape(name) for name in declared))
    return pattern.sub(lambda m: str(slots[m.group(0)[1:-1]]), TEMPLATES[kind])
