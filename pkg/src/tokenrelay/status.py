"""Scheduler-side job status reports, keyed by JobID.

Reports arrive over the management plane from whatever watches the batch
queue (`/jobstatus`); the pending page shows the latest one for the job
registered to a token. Last writer wins, nothing is persisted: reporters
re-post as the job progresses.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum

MAX_DETAIL_LEN = 1024


class JobState(str, Enum):
    PENDING = "PENDING"
    RUNNING = "RUNNING"
    COMPLETED = "COMPLETED"
    FAILED = "FAILED"
    CANCELLED = "CANCELLED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class JobStatusReport:
    job_id: str
    state: JobState
    detail: str | None
    reported_at: float

    def __post_init__(self):
        if not self.job_id:
            raise ValueError("job_id must be non-empty")
        if self.detail is not None and len(self.detail) > MAX_DETAIL_LEN:
            object.__setattr__(self, "detail", self.detail[:MAX_DETAIL_LEN])


class StatusBoard:
    def __init__(self):
        self._lock = threading.Lock()
        self._reports: dict[str, JobStatusReport] = {}

    def put(self, report: JobStatusReport) -> None:
        with self._lock:
            self._reports[report.job_id] = report

    def get(self, job_id: str | None) -> JobStatusReport | None:
        if job_id is None:
            return None
        with self._lock:
            return self._reports.get(job_id)
