"""HTML pages served by the public frontend for unmapped or unknown hosts.

Templates are ``string.Template`` files. Operators can override any of them
by dropping a same-named file into the configured pages directory; the
packaged defaults are used otherwise. Everything user-influenced is escaped.
The not-found page is identical for never-issued, destroyed and expired
labels on purpose: it must not reveal whether a label ever existed.
"""
from __future__ import annotations

import html
import importlib.resources
import string
import time
from pathlib import Path
from typing import Optional

from .status import JobState, JobStatusReport

_TEMPLATE_NAMES = ("pending.html", "job_block.html", "not_found.html", "upstream_error.html")

_FAILURE_STATES = {JobState.FAILED, JobState.CANCELLED}

_HEADLINES = {
    JobState.PENDING: "Your job is waiting in the batch queue",
    JobState.RUNNING: "Your job is running; the application is still starting up",
    JobState.COMPLETED: "Your job has already finished",
    JobState.FAILED: "Your job failed",
    JobState.CANCELLED: "Your job was cancelled",
    JobState.UNKNOWN: "Job state is unknown",
}


class PageSet:
    def __init__(self, pages_dir: Optional[str | Path] = None, refresh_seconds: int = 15):
        self.refresh_seconds = refresh_seconds
        self._templates: dict[str, string.Template] = {}
        override = Path(pages_dir) if pages_dir else None
        for name in _TEMPLATE_NAMES:
            custom = override / name if override else None
            if custom is not None and custom.exists():
                text = custom.read_text("utf-8")
            else:
                text = (
                    importlib.resources.files("tokenrelay")
                    .joinpath(f"templates/{name}")
                    .read_text("utf-8")
                )
            self._templates[name] = string.Template(text)

    def pending(self, label: str, status: Optional[JobStatusReport]) -> str:
        if status is None:
            job_block = '<p class="nojob">No job information has been reported yet.</p>'
        else:
            state = status.state
            job_block = self._templates["job_block.html"].substitute(
                job_id=html.escape(status.job_id),
                state=html.escape(state.value),
                state_class="failed" if state in _FAILURE_STATES else "waiting",
                headline=html.escape(_HEADLINES[state]),
                detail=html.escape(status.detail or ""),
                reported_at=html.escape(_format_ts(status.reported_at)),
            )
        return self._templates["pending.html"].substitute(
            label=html.escape(label),
            refresh_seconds=str(self.refresh_seconds),
            job_block=job_block,
        )

    def not_found(self) -> str:
        return self._templates["not_found.html"].substitute()

    def upstream_error(self, label: str, kind: str) -> str:
        """kind: "unreachable" (502) or "timeout" (504). Never includes the
        internal target address."""
        return self._templates["upstream_error.html"].substitute(
            label=html.escape(label),
            kind=html.escape(kind),
        )


def _format_ts(ts: float) -> str:
    return time.strftime("%Y-%m-%d %H:%M:%S UTC", time.gmtime(ts))
