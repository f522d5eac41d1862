from .app import create_app
from .jobs import JobManager, JobState, QueueFullError, VerificationJob
from .runtime import Runtime, build_runtime

__all__ = [
    "JobManager",
    "JobState",
    "QueueFullError",
    "Runtime",
    "VerificationJob",
    "build_runtime",
    "create_app",
]
