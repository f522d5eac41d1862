"""Background verification jobs.

End-to-end verification takes seconds, far beyond a comfortable HTTP
round trip, so the API accepts a claim, queues a job, and lets clients
poll. Job states move strictly queued -> running -> done | failed.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Callable

from ..errors import ClaimcheckError, NotFoundError
from ..pipeline import Claim, Verdict


class JobState(str, Enum):
    QUEUED = "queued"
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


_ALLOWED = {
    JobState.QUEUED: {JobState.RUNNING},
    JobState.RUNNING: {JobState.DONE, JobState.FAILED},
    JobState.DONE: set(),
    JobState.FAILED: set(),
}


class QueueFullError(ClaimcheckError):
    pass


@dataclass
class VerificationJob:
    id: str
    claim: Claim
    state: JobState
    verdict: Verdict | None
    error: str | None
    created_at: datetime
    finished_at: datetime | None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "claim_text": self.claim.text,
            "state": self.state.value,
            "created_at": self.created_at.isoformat(),
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "error": self.error,
        }


class JobManager:
    """Owns the job table and the worker pool that drains it."""

    def __init__(self, runner: Callable[[Claim], Verdict], workers: int = 2, capacity: int = 32):
        self._runner = runner
        self._capacity = capacity
        self._executor = ThreadPoolExecutor(max_workers=workers)
        self._lock = threading.Lock()
        self._jobs: dict[str, VerificationJob] = {}

    def submit(self, claim_text: str) -> VerificationJob:
        claim = Claim.new(claim_text)
        with self._lock:
            active = sum(
                1 for j in self._jobs.values() if j.state in (JobState.QUEUED, JobState.RUNNING)
            )
            if active >= self._capacity:
                raise QueueFullError("verification queue is full")
            job = VerificationJob(
                id=uuid.uuid4().hex,
                claim=claim,
                state=JobState.QUEUED,
                verdict=None,
                error=None,
                created_at=datetime.now(timezone.utc),
                finished_at=None,
            )
            self._jobs[job.id] = job
        self._executor.submit(self._run, job.id)
        return job

    def get(self, job_id: str) -> VerificationJob:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                raise NotFoundError(f"verification {job_id} not found")
            return job

    def _transition(self, job: VerificationJob, state: JobState):
        if state not in _ALLOWED[job.state]:
            raise RuntimeError(f"illegal job transition {job.state} -> {state}")
        job.state = state
        if state in (JobState.DONE, JobState.FAILED):
            job.finished_at = datetime.now(timezone.utc)

    def _run(self, job_id: str):
        with self._lock:
            job = self._jobs[job_id]
            self._transition(job, JobState.RUNNING)
        try:
            verdict = self._runner(job.claim)
        except Exception as exc:
            with self._lock:
                job.error = str(exc)
                self._transition(job, JobState.FAILED)
            return
        with self._lock:
            job.verdict = verdict
            self._transition(job, JobState.DONE)

    def wait_all(self, timeout: float | None = None):
        """Drain the pool (test helper); new submissions still work after."""
        import time

        deadline = None if timeout is None else time.monotonic() + timeout
        while True:
            with self._lock:
                busy = any(
                    j.state in (JobState.QUEUED, JobState.RUNNING) for j in self._jobs.values()
                )
            if not busy:
                return
            if deadline is not None and time.monotonic() > deadline:
                raise TimeoutError("jobs did not finish in time")
            time.sleep(0.01)

    def close(self):
        self._executor.shutdown(wait=True)
