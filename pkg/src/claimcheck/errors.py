"""Exception types shared across the package."""

from __future__ import annotations


class ClaimcheckError(Exception):
    """Base class for all package errors."""


class TransportError(ClaimcheckError):
    """A provider call failed at the network level (retryable upstream)."""


class PayloadParseError(ClaimcheckError):
    """A provider response could not be parsed into the expected shape.

    The raw response is kept on ``.raw`` for diagnostics.
    """

    def __init__(self, message: str, raw: str = ""):
        super().__init__(message)
        self.raw = raw


class FixtureMissError(ClaimcheckError):
    """Strict replay mode was asked for a request it has no recording of."""

    def __init__(self, request_key: str, kind: str = ""):
        detail = f"no replay fixture for request_key={request_key}"
        if kind:
            detail += f" (kind={kind})"
        super().__init__(detail)
        self.request_key = request_key


class ContractError(ClaimcheckError):
    """A caller violated an operation precondition."""


class PipelineError(ClaimcheckError):
    """Verification could not complete; carries the partial iteration trail."""

    def __init__(self, message: str, traces=None):
        super().__init__(message)
        self.traces = list(traces or [])


class NotFoundError(ClaimcheckError):
    """Referenced record does not exist."""


class ValidationError(ClaimcheckError):
    """Record-level validation failed (empty title, bad direction, ...)."""
