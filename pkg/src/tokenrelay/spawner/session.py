"""The launch sequence: detect system, get a token, build and submit the
batch script, register the job, persist session state, hand the user a URL.

A failure after token issuance cleans nothing up on purpose: the unredeemed
token simply expires on its own, and destroying it would require information
the failed stage may not have produced.
"""
from __future__ import annotations

import json
import os
import socket
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .client import ManagementClient
from .errors import SpawnerError, StageError
from .profiles import SystemProfile, detect_system
from .schedulers import SchedulerAdapter, adapter_for_profile
from .template import LaunchOptions, build_batch_script

STATE_ENV = "TOKENRELAY_STATE_DIR"


@dataclass(frozen=True)
class SessionInfo:
    token: str
    url: str
    job_id: str
    script_path: Path


def state_dir() -> Path:
    override = os.environ.get(STATE_ENV)
    if override:
        return Path(override)
    xdg = os.environ.get("XDG_STATE_HOME") or os.path.expanduser("~/.local/state")
    return Path(xdg) / "tokenrelay"


def _write_private(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    os.chmod(path.parent, 0o700)
    fd = os.open(path, os.O_CREAT | os.O_WRONLY | os.O_TRUNC, 0o600)
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(content)


def start_session(
    opts: LaunchOptions,
    profiles: Sequence[SystemProfile],
    hostname: Optional[str] = None,
    client: Optional[ManagementClient] = None,
    adapter: Optional[SchedulerAdapter] = None,
    sessions_root: Optional[Path] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> SessionInfo:
    import sys

    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    root = Path(sessions_root) if sessions_root is not None else state_dir()

    def stage(name: str, fn):
        try:
            return fn()
        except Exception as exc:
            raise StageError(name, exc) from exc

    profile = stage("detect_system", lambda: detect_system(hostname or socket.gethostname(), profiles))
    print(f"system: {profile.name}", file=err)

    mgmt = client if client is not None else ManagementClient(profile.management_url)
    label = stage("issue_token", mgmt.get_token)
    url = f"https://{label}.{profile.public_domain}"
    print(f"your notebook will be served at {url}", file=err)
    print("(open it now to watch the job start)", file=err)

    script_text = stage("build_script", lambda: build_batch_script(profile, opts, label))
    script_path = root / "scripts" / f"{label}.sh"
    stage("build_script", lambda: _write_private(script_path, script_text))

    job_id = stage("submit", lambda: _submit(profile, adapter, script_path, script_text))
    print(f"submitted job {job_id}", file=err)

    stage("register_job", lambda: mgmt.register_job(label, job_id))

    session = SessionInfo(token=label, url=url, job_id=job_id, script_path=script_path)
    stage(
        "persist_state",
        lambda: _write_private(
            root / "sessions" / f"{label}.json",
            json.dumps(
                {
                    "token": label,
                    "url": url,
                    "job_id": job_id,
                    "script_path": str(script_path),
                },
                indent=2,
            )
            + "\n",
        ),
    )
    print(url, file=out, flush=True)
    return session


def _submit(profile, adapter, script_path: Path, script_text: str) -> str:
    chosen = adapter if adapter is not None else adapter_for_profile(profile)
    return chosen.submit(script_path, script_text)
