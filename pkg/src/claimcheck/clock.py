"""Injectable clocks.

Rate limiting and latency accounting must be testable without wall-clock
flakiness, so everything that reads time takes a clock handle.
"""

from __future__ import annotations

import threading
import time
from typing import Protocol


class Clock(Protocol):
    def monotonic(self) -> float: ...

    def sleep(self, seconds: float) -> None: ...


class SystemClock:
    """Real time."""

    def monotonic(self) -> float:
        return time.monotonic()

    def sleep(self, seconds: float) -> None:
        time.sleep(seconds)


class FixedClock:
    """Clock frozen at a constant; sleeps return immediately.

    Used in replay mode so that timing fields are identical across runs.
    """

    def __init__(self, value: float = 0.0):
        self.value = value

    def monotonic(self) -> float:
        return self.value

    def sleep(self, seconds: float) -> None:
        return None


class VirtualClock:
    """Thread-safe virtual time: sleeping advances time instead of waiting.

    Progress is guaranteed (a sleeper always moves time forward), which is
    all the token bucket needs; tests then reason in virtual timestamps.
    """

    def __init__(self, start: float = 0.0):
        self._now = start
        self._lock = threading.Lock()

    def monotonic(self) -> float:
        with self._lock:
            return self._now

    def sleep(self, seconds: float) -> None:
        if seconds <= 0:
            return
        with self._lock:
            self._now += seconds

    def advance(self, seconds: float) -> None:
        self.sleep(seconds)
