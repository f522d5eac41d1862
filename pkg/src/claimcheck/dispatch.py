"""Bounded-concurrency, rate-limited execution of independent tasks.

Inference calls fan out in parallel but must respect provider rate limits,
so every task start first takes a permit from a token bucket. The bucket
grants at most ``rate`` permits per window: permits refill in full at each
window boundary, so the per-window start count can never exceed ``rate``.

A scheduler instance is cheap; several may run at once (one per
verification job) while sharing a single bucket for the common provider.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .clock import Clock, SystemClock


@dataclass
class ThrottlePolicy:
    max_concurrent: int = 5
    rate: int = 10
    window_s: float = 1.0
    retry_budget: int = 1

    def __post_init__(self):
        if self.max_concurrent < 1:
            raise ValueError("max_concurrent must be >= 1")
        if self.rate < 1:
            raise ValueError("rate must be >= 1")
        if self.window_s <= 0:
            raise ValueError("window_s must be positive")
        if self.retry_budget < 0:
            raise ValueError("retry_budget must be >= 0")


class TokenBucket:
    """Permit source refilled to ``rate`` at every window boundary.

    Thread-safe; time comes from the injected clock so tests can assert
    grant timestamps without real waiting.
    """

    def __init__(self, rate: int, window_s: float, clock: Clock | None = None):
        self._rate = rate
        self._window = window_s
        self._clock = clock or SystemClock()
        self._lock = threading.Lock()
        self._epoch = self._clock.monotonic()
        self._window_idx = 0
        self._tokens = rate

    @property
    def epoch(self) -> float:
        return self._epoch

    @property
    def window_s(self) -> float:
        return self._window

    def acquire(self) -> float:
        """Block until a permit is granted; return the grant timestamp."""
        while True:
            with self._lock:
                now = self._clock.monotonic()
                idx = int((now - self._epoch) // self._window)
                if idx > self._window_idx:
                    self._window_idx = idx
                    self._tokens = self._rate
                if self._tokens > 0:
                    self._tokens -= 1
                    return now
                wait = self._epoch + (self._window_idx + 1) * self._window - now
            self._clock.sleep(max(wait, 1e-9))


@dataclass
class SlotOutcome:
    """Result of one task slot: either a value or the error that ended it."""

    index: int
    value: Any = None
    error: BaseException | None = None
    attempts: int = 0

    @property
    def ok(self) -> bool:
        return self.error is None


def run_bounded(
    tasks: Sequence[Callable[[], Any]],
    policy: ThrottlePolicy,
    *,
    limiter: TokenBucket | None = None,
    clock: Clock | None = None,
) -> list[SlotOutcome]:
    """Run independent tasks under concurrency and rate bounds.

    The returned list has one outcome per task, in submission order,
    regardless of completion order. A failing task is retried up to
    ``policy.retry_budget`` times (each attempt takes a fresh permit) and
    then its slot records the error; other slots are never cancelled.
    """
    if not tasks:
        return []
    clock = clock or SystemClock()
    bucket = limiter or TokenBucket(policy.rate, policy.window_s, clock)

    def run_slot(index: int, task: Callable[[], Any]) -> SlotOutcome:
        outcome = SlotOutcome(index=index)
        for attempt in range(policy.retry_budget + 1):
            bucket.acquire()
            outcome.attempts = attempt + 1
            try:
                outcome.value = task()
                outcome.error = None
                return outcome
            except Exception as exc:  # per-slot isolation: never propagate
                outcome.error = exc
        return outcome

    with ThreadPoolExecutor(max_workers=policy.max_concurrent) as pool:
        futures = [pool.submit(run_slot, i, task) for i, task in enumerate(tasks)]
        return [f.result() for f in futures]
