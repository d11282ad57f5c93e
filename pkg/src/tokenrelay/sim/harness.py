"""Scripted end-to-end scenarios against a real service on simulated time.

One scenario = one full lifecycle: spawn the service (plaintext, loopback),
run the launcher against it with the simulated scheduler, then step the
clock, ticking the scheduler and the reconciler and fetching the user's URL
like a browser would, recording everything observable into a transcript.
Nothing sleeps on wall time; a whole multi-minute lifecycle runs in seconds
and two runs with the same scenario produce identical transcripts.
"""
from __future__ import annotations

import io
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import json

import requests
import yaml

from ..clock import ManualClock
from ..config import load_and_validate
from ..registry import TokenState
from ..service import RelayService
from ..spawner.client import ManagementClient
from ..spawner.profiles import SchedulerKind, SystemProfile
from ..spawner.schedulers import SimulatedAdapter
from ..spawner.session import start_session
from ..spawner.template import LaunchOptions
from .scheduler import AppBehavior, JobOutcome, SimScheduler
from . import ws

logger = logging.getLogger(__name__)

SIM_DOMAIN = "nb.sim.test"

# transcript event names
TOKEN_ISSUED = "TOKEN_ISSUED"
JOB_SUBMITTED = "JOB_SUBMITTED"
STATUS_POSTED = "STATUS_POSTED"
REDEEMED = "REDEEMED"
ACTIVATED = "ACTIVATED"
FIRST_PROXIED_RESPONSE = "FIRST_PROXIED_RESPONSE"
DESTROYED = "DESTROYED"
EXPIRED = "EXPIRED"
PAGE_OBSERVED = "PAGE_OBSERVED"
WS_ECHO = "WS_ECHO"
SCENARIO_END = "SCENARIO_END"

PAGE_PENDING = "PENDING"
PAGE_PROXY = "PROXY"
PAGE_NOT_FOUND = "NOT_FOUND"
PAGE_ERROR = "ERROR"


class ScenarioTimeout(Exception):
    pass


@dataclass
class SimScenario:
    queue_delay_s: int = 30
    job_outcome: JobOutcome = JobOutcome.RUNS
    app_behavior: AppBehavior = AppBehavior.ECHO_HTTP
    mapping_ttl_override_s: Optional[int] = None
    clock_step_s: int = 1
    job_time_minutes: int = 5
    shutdown_after_s: Optional[int] = 30
    issue_grace_s: int = 60
    status_interval_s: int = 10
    max_sim_s: Optional[int] = None
    seed: int = 7

    def __post_init__(self):
        self.job_outcome = JobOutcome(self.job_outcome)
        self.app_behavior = AppBehavior(self.app_behavior)
        if self.queue_delay_s < 0:
            raise ValueError("queue_delay_s must be >= 0")
        if self.clock_step_s <= 0:
            raise ValueError("clock_step_s must be > 0")

    @property
    def wall_clock_s(self) -> int:
        return self.job_time_minutes * 60

    @property
    def mapping_ttl_s(self) -> int:
        if self.mapping_ttl_override_s is not None:
            return self.mapping_ttl_override_s
        if self.job_outcome is JobOutcome.RUNS:
            return min(120, self.wall_clock_s)
        return self.wall_clock_s

    @property
    def sim_bound_s(self) -> int:
        if self.max_sim_s is not None:
            return self.max_sim_s
        # queue + full wall time + TTL + unredeemed-token TTL, with slack
        return (
            self.queue_delay_s
            + self.wall_clock_s
            + self.mapping_ttl_s
            + self.wall_clock_s
            + self.issue_grace_s
            + 60
        )

    @classmethod
    def from_dict(cls, doc: dict) -> "SimScenario":
        return cls(**doc)

    @classmethod
    def from_file(cls, path: str | Path) -> "SimScenario":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(yaml.safe_load(fh) or {})


@dataclass(frozen=True)
class TranscriptEvent:
    t: float
    name: str
    detail: dict


class Transcript:
    def __init__(self, events: Optional[list[TranscriptEvent]] = None):
        self.events: list[TranscriptEvent] = events or []

    def append(self, t: float, name: str, **detail) -> None:
        if self.events and t < self.events[-1].t:
            raise AssertionError("transcript time went backwards")
        self.events.append(TranscriptEvent(t, name, detail))

    def names(self) -> list[str]:
        return [e.name for e in self.events]

    def first(self, name: str, **match) -> Optional[TranscriptEvent]:
        for e in self.events:
            if e.name == name and all(e.detail.get(k) == v for k, v in match.items()):
                return e
        return None

    def index(self, name: str, **match) -> int:
        for i, e in enumerate(self.events):
            if e.name == name and all(e.detail.get(k) == v for k, v in match.items()):
                return i
        raise KeyError(f"no event {name} {match}")

    def all(self, name: str) -> list[TranscriptEvent]:
        return [e for e in self.events if e.name == name]

    def page_kinds(self) -> list[str]:
        return [e.detail["kind"] for e in self.all(PAGE_OBSERVED)]

    def write(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for e in self.events:
                fh.write(json.dumps({"t": e.t, "event": e.name, "detail": e.detail}) + "\n")

    @classmethod
    def read(cls, path: str | Path) -> "Transcript":
        events = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                doc = json.loads(line)
                events.append(TranscriptEvent(doc["t"], doc["event"], doc["detail"]))
        return cls(events)


class _InstrumentedClient(ManagementClient):
    def __init__(self, url: str, emit):
        super().__init__(url)
        self._emit = emit

    def get_token(self) -> str:
        label = super().get_token()
        self._emit(TOKEN_ISSUED, token=label)
        return label


class SimBrowser:
    """Classifies what a user staring at the URL would see."""

    def __init__(self, frontend_port: int, domain: str = SIM_DOMAIN):
        self._port = frontend_port
        self._domain = domain
        self._session = requests.Session()

    def fetch(self, label: str) -> str:
        try:
            r = self._session.get(
                f"http://127.0.0.1:{self._port}/",
                headers={"Host": f"{label}.{self._domain}"},
                timeout=10,
            )
        except requests.RequestException:
            return PAGE_ERROR
        if r.status_code == 404:
            return PAGE_NOT_FOUND
        if r.status_code == 200 and r.text.startswith("upstream:"):
            return PAGE_PROXY
        if r.status_code == 200:
            return PAGE_PENDING
        return PAGE_ERROR

    def page_text(self, label: str) -> str:
        r = self._session.get(
            f"http://127.0.0.1:{self._port}/",
            headers={"Host": f"{label}.{self._domain}"},
            timeout=10,
        )
        return r.text

    def close(self) -> None:
        self._session.close()


def service_config_for(scenario: SimScenario, workdir: Path) -> dict:
    return {
        "registry": {
            "trusted_cidrs": ["127.0.0.0/8"],
            "public_domain": SIM_DOMAIN,
            "mapping_ttl_s": scenario.mapping_ttl_s,
            "wall_clock_limit_s": max(scenario.wall_clock_s, scenario.mapping_ttl_s),
            "issue_grace_s": scenario.issue_grace_s,
            "reconcile_interval_s": 1,
        },
        "management": {"bind": "127.0.0.1:0"},
        "frontend": {"bind": "127.0.0.1:0", "dev_plaintext": True},
        "journal": {"path": str(workdir / "journal.ndjson")},
        "log_level": "warning",
    }


def run_scenario(scenario: SimScenario, workdir: str | Path) -> Transcript:
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    clock = ManualClock()
    cfg = load_and_validate(service_config_for(scenario, workdir))
    service = RelayService(cfg, clock=clock, rng=random.Random(scenario.seed))
    service.start(run_reconciler=False)

    transcript = Transcript()

    def emit(name, **detail):
        transcript.append(clock.now(), name, **detail)

    scheduler = SimScheduler(
        clock,
        queue_delay_s=scenario.queue_delay_s,
        outcome=scenario.job_outcome,
        app_behavior=scenario.app_behavior,
        status_interval_s=scenario.status_interval_s,
        emit=emit,
    )
    browser = SimBrowser(service.frontend_port)
    try:
        profile = SystemProfile(
            name="sim-cluster",
            hostname_patterns=["*"],
            management_url=f"http://127.0.0.1:{service.management_port}",
            public_domain=SIM_DOMAIN,
            scheduler=SchedulerKind.SIMULATED,
            default_partition="debug",
            default_time_minutes=scenario.job_time_minutes,
            max_time_minutes=max(scenario.job_time_minutes, 48 * 60),
            template_path="builtin:slurm_notebook.sh",
            port_range=(18000, 18099),
        )
        client = _InstrumentedClient(profile.management_url, emit)
        session = start_session(
            LaunchOptions(),
            [profile],
            hostname="sim-login",
            client=client,
            adapter=SimulatedAdapter(scheduler),
            sessions_root=workdir / "state",
            stdout=io.StringIO(),
            stderr=io.StringIO(),
        )
        label = session.token
        start_t = clock.now()
        prev_state = TokenState.ISSUED
        seen_active = False
        first_proxy_t: Optional[float] = None
        ws_checked = False
        shutdown_done = False

        while True:
            now = clock.now()
            scheduler.tick(now)
            service.reconcile_once()

            rec = service.registry.get(label)
            if rec is not None:
                if (
                    not seen_active
                    and rec.state is TokenState.MAPPED
                    and rec.mapping is not None
                    and rec.mapping.active
                ):
                    seen_active = True
                    emit(ACTIVATED, token=label)
                if rec.state is not prev_state:
                    if rec.state is TokenState.DESTROYED:
                        emit(DESTROYED, token=label)
                    elif rec.state is TokenState.EXPIRED:
                        emit(EXPIRED, token=label)
                    prev_state = rec.state

            kind = browser.fetch(label)
            emit(PAGE_OBSERVED, kind=kind)
            if kind == PAGE_PROXY and first_proxy_t is None:
                first_proxy_t = now
                emit(FIRST_PROXIED_RESPONSE, token=label)
            if (
                kind == PAGE_PROXY
                and not ws_checked
                and scenario.app_behavior is AppBehavior.ECHO_WEBSOCKET
            ):
                ws_checked = True
                emit(WS_ECHO, ok=_ws_echo_ok(service.frontend_port, label))

            if (
                scenario.job_outcome is JobOutcome.RUNS
                and scenario.shutdown_after_s is not None
                and not shutdown_done
                and first_proxy_t is not None
                and now >= first_proxy_t + scenario.shutdown_after_s
            ):
                scheduler.user_shutdown(session.job_id, now)
                shutdown_done = True

            terminal = rec is None or rec.state in (TokenState.DESTROYED, TokenState.EXPIRED)
            if terminal and kind == PAGE_NOT_FOUND:
                counts = service.registry.counts()
                emit(
                    SCENARIO_END,
                    active_mappings=counts["active_mappings"],
                    issued_tokens=counts["issued_tokens"],
                )
                break
            if now - start_t > scenario.sim_bound_s:
                raise ScenarioTimeout(
                    f"no terminal state after {scenario.sim_bound_s}s of simulated time"
                )
            clock.advance(scenario.clock_step_s)
        return transcript
    finally:
        browser.close()
        scheduler.shutdown()
        service.stop()


def _ws_echo_ok(frontend_port: int, label: str) -> bool:
    try:
        client = ws.WsClient(
            "127.0.0.1", frontend_port, path="/channel", host_header=f"{label}.{SIM_DOMAIN}"
        )
        client.send_text("ping")
        opcode, payload = client.recv()
        client.close()
        return opcode == ws.OP_TEXT and payload == b"ping"
    except (ConnectionError, OSError):
        return False
