"""Parsing of model JSON payloads and vocabulary normalization.

Every prompt demands a JSON object, but models wrap replies in prose and
code fences, add trailing commas, or annotate values with comments. The
parser extracts the first well-formed object and applies those repairs
before giving up.
"""

from __future__ import annotations

import json
import logging
import re

from ..errors import PayloadParseError

logger = logging.getLogger(__name__)

# Upstream token -> canonical stance. The evaluation prompt's field name
# offers support/contradict/unrelated while its rules emit negate and
# baseless; all five surface tokens are accepted.
STANCE_TOKENS = {
    "support": "Support",
    "contradict": "Refute",
    "negate": "Refute",
    "unrelated": "Unrelated",
    "baseless": "Unrelated",
}

DECISION_TOKENS = {
    "real": "Real",
    "fake": "Fake",
    "nei": "NEI",
}

_FENCE_RE = re.compile(r"```[a-zA-Z0-9_-]*\n(.*?)```", re.DOTALL)


def normalize_stance(token: str) -> str:
    """Map a raw stance token to Support / Refute / Unrelated."""
    canon = STANCE_TOKENS.get(token.strip().lower())
    if canon is None:
        raise PayloadParseError(f"unknown stance token {token!r}", raw=token)
    return canon


def normalize_decision(token: str) -> str:
    """Map a raw decision token to Real / Fake / NEI."""
    canon = DECISION_TOKENS.get(token.strip().lower())
    if canon is None:
        raise PayloadParseError(f"unknown decision label {token!r}", raw=token)
    return canon


def clamp_confidence(value, *, context: str = "") -> int:
    """Coerce a confidence value to an int in [0, 100].

    Out-of-range values are clamped with a warning rather than rejected;
    a confidence that cannot be read as a number at all is a parse error.
    """
    if isinstance(value, bool):
        raise PayloadParseError(f"confidence must be numeric, got {value!r}")
    if isinstance(value, str):
        try:
            value = float(value.strip().rstrip("%"))
        except ValueError:
            raise PayloadParseError(f"confidence must be numeric, got {value!r}") from None
    if not isinstance(value, (int, float)):
        raise PayloadParseError(f"confidence must be numeric, got {value!r}")
    number = int(round(float(value)))
    if number < 0 or number > 100:
        clamped = min(100, max(0, number))
        logger.warning("confidence %s out of [0, 100]%s; clamped to %s",
                       number, f" in {context}" if context else "", clamped)
        return clamped
    return number


def _strip_fences(raw: str) -> str:
    for match in _FENCE_RE.finditer(raw):
        body = match.group(1)
        if "{" in body:
            return body
    return raw


def _first_object(text: str) -> str | None:
    """Return the first balanced {...} span, honoring strings and escapes."""
    start = text.find("{")
    while start != -1:
        depth = 0
        in_string = False
        escaped = False
        for i in range(start, len(text)):
            ch = text[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
                continue
            if ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    return text[start : i + 1]
        start = text.find("{", start + 1)
    return None


def _strip_comments(text: str) -> str:
    """Drop # and // line comments that sit outside string literals."""
    out = []
    in_string = False
    escaped = False
    i = 0
    while i < len(text):
        ch = text[i]
        if in_string:
            out.append(ch)
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            i += 1
            continue
        if ch == '"':
            in_string = True
            out.append(ch)
            i += 1
            continue
        if ch == "#" or text[i : i + 2] == "//":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        out.append(ch)
        i += 1
    return "".join(out)


_TRAILING_COMMA_RE = re.compile(r",(\s*[}\]])")


def _try_parse(candidate: str):
    attempts = [candidate]
    repaired = _strip_comments(candidate)
    attempts.append(repaired)
    attempts.append(_TRAILING_COMMA_RE.sub(r"\1", repaired))
    for attempt in attempts:
        try:
            parsed = json.loads(attempt)
        except json.JSONDecodeError:
            continue
        if isinstance(parsed, dict):
            return parsed
    return None


def parse_json_payload(raw: str, required: dict[str, type] | None = None) -> dict:
    """Extract the first JSON object from a raw model reply.

    Strips code fences and surrounding prose, then tries progressively
    repaired variants (comment removal, trailing-comma removal). Fence
    stripping is best effort: if the fence body does not parse, the raw
    text is scanned as-is. Raises PayloadParseError when no object parses
    or a required field is absent or of the wrong type.
    """
    texts = []
    fenced = _strip_fences(raw)
    if fenced != raw:
        texts.append(fenced)
    texts.append(raw)

    payload = None
    found_any = False
    for text in texts:
        candidate = _first_object(text)
        if candidate is None:
            continue
        found_any = True
        payload = _try_parse(candidate)
        if payload is not None:
            break
    if not found_any:
        raise PayloadParseError("no JSON object found in response", raw=raw)
    if payload is None:
        raise PayloadParseError("response JSON is not an object", raw=raw)

    for name, expected in (required or {}).items():
        if name not in payload:
            raise PayloadParseError(f"required field {name!r} missing", raw=raw)
        if expected is not None and not isinstance(payload[name], expected):
            raise PayloadParseError(
                f"field {name!r} has wrong type {type(payload[name]).__name__}", raw=raw
            )
    return payload
