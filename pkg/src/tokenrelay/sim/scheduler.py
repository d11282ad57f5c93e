"""Simulated batch scheduler.

Accepts rendered batch scripts, parses the directives a real scheduler would
(partition, wall time) plus the job-side contract embedded by the launcher
(token, management URL, port range), and advances jobs on simulated time:
queued for a configurable delay, then started. Starting a job performs the
same steps the script would on a compute node: bind a free port, launch the
fake application on it, report RUNNING, redeem the token. Wall-time overrun
kills the application without destroying the mapping, which is exactly the
case the mapping TTL exists for.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from ..spawner.client import ManagementClient
from ..spawner.errors import SubmitFailed
from ..spawner.ports import pick_free_port
from .apps import AppHandle

_PARTITION_RE = re.compile(r"^#SBATCH\s+--partition=(\S+)", re.MULTILINE)
_TIME_RE = re.compile(r"^#SBATCH\s+--time=(\d+)", re.MULTILINE)
_REDEEM_RE = re.compile(r"\"([^\"]+)/redeemtoken\.cgi\?token=([a-z0-9-]+)&port=")
_PORTS_RE = re.compile(r"pick-port\s+--low\s+(\d+)\s+--high\s+(\d+)")


class JobOutcome(str, Enum):
    RUNS = "RUNS"
    NEVER_STARTS = "NEVER_STARTS"
    FAILS_AT_START = "FAILS_AT_START"
    DIES_MIDWAY = "DIES_MIDWAY"


class AppBehavior(str, Enum):
    ECHO_HTTP = "ECHO_HTTP"
    ECHO_WEBSOCKET = "ECHO_WEBSOCKET"
    SLOW_RESPONSE = "SLOW_RESPONSE"


@dataclass
class SimJob:
    job_id: str
    script: str
    submitted_at: float
    partition: str
    time_limit_s: int
    token: str
    management_url: str
    port_low: int
    port_high: int
    state: str = "PENDING"  # PENDING RUNNING FAILED WALLTIME DIED DONE
    started_at: Optional[float] = None
    app: Optional[AppHandle] = None
    port: Optional[int] = None
    redeemed: bool = False
    last_status_post: float = float("-inf")


def _noop_emit(name: str, **detail) -> None:
    pass


class SimScheduler:
    def __init__(
        self,
        clock,
        queue_delay_s: float = 30.0,
        outcome: JobOutcome = JobOutcome.RUNS,
        app_behavior: AppBehavior = AppBehavior.ECHO_HTTP,
        status_interval_s: float = 10.0,
        emit: Callable = _noop_emit,
    ):
        self.clock = clock
        self.queue_delay_s = queue_delay_s
        self.outcome = JobOutcome(outcome)
        self.app_behavior = AppBehavior(app_behavior)
        self.status_interval_s = status_interval_s
        self.emit = emit
        self.jobs: dict[str, SimJob] = {}
        self._ids = itertools.count(1000)
        self._clients: dict[str, ManagementClient] = {}

    # -- the SchedulerAdapter-facing side ---------------------------------

    def submit(self, script_text: str) -> str:
        partition = _PARTITION_RE.search(script_text)
        time_m = _TIME_RE.search(script_text)
        redeem = _REDEEM_RE.search(script_text)
        ports = _PORTS_RE.search(script_text)
        missing = [
            name
            for name, found in [
                ("partition directive", partition),
                ("time directive", time_m),
                ("redeem call", redeem),
                ("port range", ports),
            ]
            if not found
        ]
        if missing:
            raise SubmitFailed(f"malformed batch script: no {', no '.join(missing)}")
        job = SimJob(
            job_id=str(next(self._ids)),
            script=script_text,
            submitted_at=self.clock.now(),
            partition=partition.group(1),
            time_limit_s=int(time_m.group(1)) * 60,
            management_url=redeem.group(1),
            token=redeem.group(2),
            port_low=int(ports.group(1)),
            port_high=int(ports.group(2)),
        )
        self.jobs[job.job_id] = job
        self.emit("JOB_SUBMITTED", job_id=job.job_id, partition=job.partition)
        return job.job_id

    # -- simulation ---------------------------------------------------------

    def tick(self, now: float) -> None:
        for job in self.jobs.values():
            if job.state == "PENDING":
                if self.outcome is not JobOutcome.NEVER_STARTS and now >= job.submitted_at + self.queue_delay_s:
                    self._start(job, now)
                else:
                    position = self._queue_position(job)
                    self._post(job, now, "PENDING", f"position {position} in queue")
            elif job.state == "RUNNING":
                if (
                    self.outcome is JobOutcome.DIES_MIDWAY
                    and now >= job.started_at + job.time_limit_s / 2
                ):
                    self._kill_app(job)
                    job.state = "DIED"
                    self._post(job, now, "FAILED", "application died", force=True)
                elif now >= job.started_at + job.time_limit_s:
                    # wall-clock enforcement: the app dies with no destroy
                    # call; only the mapping TTL cleans up after it
                    self._kill_app(job)
                    job.state = "WALLTIME"
                    self._post(job, now, "COMPLETED", "wall-clock limit reached", force=True)
                else:
                    self._post(job, now, "RUNNING", f"on port {job.port}")

    def _queue_position(self, job: SimJob) -> int:
        pending = [j for j in self.jobs.values() if j.state == "PENDING"]
        return sorted(pending, key=lambda j: j.submitted_at).index(job) + 1

    def _start(self, job: SimJob, now: float) -> None:
        job.started_at = now
        if self.outcome is JobOutcome.FAILS_AT_START:
            job.state = "FAILED"
            self._post(job, now, "FAILED", "job failed at startup", force=True)
            return
        job.port = pick_free_port(job.port_low, job.port_high)
        job.app = AppHandle(
            sentinel=f"job-{job.job_id}",
            port=job.port,
            slow_first_byte_s=0.25 if self.app_behavior is AppBehavior.SLOW_RESPONSE else 0.0,
        )
        job.app.start()
        job.state = "RUNNING"
        self._post(job, now, "RUNNING", "node allocated, application starting", force=True)
        self._client(job).redeem(job.token, job.port)
        job.redeemed = True
        self.emit("REDEEMED", token=job.token)

    def user_shutdown(self, job_id: str, now: float) -> None:
        """The user closing their notebook: destroy the mapping from the
        same host, then the job exits normally."""
        job = self.jobs[job_id]
        if job.redeemed:
            self._client(job).destroy(job.token, job.port)
        self._kill_app(job)
        job.state = "DONE"
        self._post(job, now, "COMPLETED", "shut down by user", force=True)

    def shutdown(self) -> None:
        for job in self.jobs.values():
            self._kill_app(job)
        for client in self._clients.values():
            client.close()

    def _kill_app(self, job: SimJob) -> None:
        if job.app is not None:
            job.app.kill()

    def _client(self, job: SimJob) -> ManagementClient:
        client = self._clients.get(job.management_url)
        if client is None:
            client = ManagementClient(job.management_url)
            self._clients[job.management_url] = client
        return client

    def _post(self, job: SimJob, now: float, state: str, detail: str, force: bool = False) -> None:
        if not force and now - job.last_status_post < self.status_interval_s:
            return
        job.last_status_post = now
        self._client(job).post_job_status(job.job_id, state, detail)
        self.emit("STATUS_POSTED", job_id=job.job_id, state=state)
