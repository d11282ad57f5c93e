"""Batch-scheduler adapters: submit a rendered script, get an opaque job id.

SLURM_COMMAND shells out to the site submit command and parses the id from
its stdout (both the human "Submitted batch job N" form and the --parsable
"N[;cluster]" form). SIMULATED hands the script to an in-process simulated
scheduler; without one attached it queues nowhere and just mints ids, which
is enough for dry runs of the CLI.
"""
from __future__ import annotations

import itertools
import re
import subprocess
from pathlib import Path
from typing import Optional, Protocol

from .errors import SubmitFailed

_SUBMIT_RE = re.compile(r"Submitted batch job (\d+)")
_PARSABLE_RE = re.compile(r"^(\d+)(?:;[\w.-]+)?$")


def parse_submit_output(output: str) -> str:
    for line in output.splitlines():
        line = line.strip()
        m = _SUBMIT_RE.search(line)
        if m:
            return m.group(1)
        m = _PARSABLE_RE.match(line)
        if m:
            return m.group(1)
    raise SubmitFailed("could not find a job id in submit output", output)


class SchedulerAdapter(Protocol):
    def submit(self, script_path: Path, script_text: str) -> str: ...


class SlurmCommandAdapter:
    def __init__(self, submit_command: str = "sbatch"):
        self.submit_command = submit_command

    def submit(self, script_path: Path, script_text: str) -> str:
        try:
            proc = subprocess.run(
                [self.submit_command, str(script_path)],
                capture_output=True,
                text=True,
                timeout=60,
            )
        except FileNotFoundError:
            raise SubmitFailed(f"submit command not found: {self.submit_command}") from None
        except subprocess.TimeoutExpired:
            raise SubmitFailed(f"{self.submit_command} timed out") from None
        if proc.returncode != 0:
            raise SubmitFailed(
                f"{self.submit_command} exited {proc.returncode}",
                (proc.stderr or proc.stdout).strip(),
            )
        return parse_submit_output(proc.stdout)


class SimulatedAdapter:
    """Delegates to a simulated scheduler when one is attached (the test
    harness does); standalone it only assigns ids."""

    def __init__(self, scheduler=None):
        self.scheduler = scheduler
        self._ids = itertools.count(1000)
        self.submitted: list[str] = []

    def submit(self, script_path: Path, script_text: str) -> str:
        if self.scheduler is not None:
            return self.scheduler.submit(script_text)
        self.submitted.append(script_text)
        return str(next(self._ids))


def adapter_for_profile(profile, simulated_scheduler=None) -> SchedulerAdapter:
    from .profiles import SchedulerKind

    if profile.scheduler is SchedulerKind.SLURM_COMMAND:
        return SlurmCommandAdapter(profile.submit_command)
    return SimulatedAdapter(simulated_scheduler)
