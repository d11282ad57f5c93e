"""Batch-script rendering.

Templates use ``{{name}}`` placeholders. Defined names: partition, account,
time_minutes, workdir, gpus, service_cmd, container_prefix, token,
management_url, port_range_low, port_range_high. Rendering is strict both
ways: a placeholder with no value is an error, and no ``{{...}}`` marker may
survive into the output. Scheduler directive lines whose value rendered
empty (``#SBATCH --account=`` with no account, ``--gpus=`` with zero GPUs)
are dropped so the scheduler applies its own default.

The rendered script embeds the token; callers write it with owner-only
permissions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from .errors import TemplateError, ValidationError
from .profiles import SystemProfile

PLACEHOLDER_RE = re.compile(r"\{\{\s*([A-Za-z_][A-Za-z0-9_]*)\s*\}\}")
_EMPTY_DIRECTIVE_RE = re.compile(r"^#SBATCH\s+\S+=\s*$")


class ServiceKind(str, Enum):
    NOTEBOOK = "NOTEBOOK"
    JUPYTERLAB = "JUPYTERLAB"


_SERVICE_COMMANDS = {
    ServiceKind.NOTEBOOK: "jupyter notebook",
    ServiceKind.JUPYTERLAB: "jupyter lab",
}


@dataclass
class LaunchOptions:
    partition: Optional[str] = None
    notebook_dir: Optional[str] = None
    account: Optional[str] = None
    batch_script: Optional[str] = None
    time_minutes: Optional[int] = None
    service: Optional[ServiceKind] = None
    gpus: int = 0
    container_image: Optional[str] = None
    print_env: bool = False

    def __post_init__(self):
        if self.batch_script is not None and self.service is not None:
            raise ValidationError("a custom batch script and a service type are mutually exclusive")
        if self.time_minutes is not None and self.time_minutes < 1:
            raise ValidationError("time_minutes must be at least 1")
        if self.gpus < 0:
            raise ValidationError("gpus must be >= 0")


def render_template(text: str, values: dict[str, str]) -> str:
    unresolved: list[str] = []

    def sub(match: re.Match) -> str:
        name = match.group(1)
        if name not in values:
            unresolved.append(name)
            return ""
        return str(values[name])

    rendered = PLACEHOLDER_RE.sub(sub, text)
    if unresolved:
        raise TemplateError(unresolved[0])
    if "{{" in rendered:
        raise TemplateError(rendered[rendered.index("{{"):][:40])
    lines = [ln for ln in rendered.split("\n") if not _EMPTY_DIRECTIVE_RE.match(ln)]
    return "\n".join(lines)


def build_batch_script(profile: SystemProfile, opts: LaunchOptions, token_label: str) -> str:
    """Pure function of (profile, opts, token): same inputs, same bytes."""
    time_minutes = opts.time_minutes if opts.time_minutes is not None else profile.default_time_minutes
    if time_minutes > profile.max_time_minutes:
        raise ValidationError(
            f"requested {time_minutes} minutes exceeds the {profile.name} "
            f"limit of {profile.max_time_minutes}"
        )
    service = opts.service if opts.service is not None else ServiceKind.NOTEBOOK
    container_prefix = ""
    if opts.container_image:
        container_prefix = f"singularity exec {opts.container_image} "
    if opts.batch_script is not None:
        text = Path(opts.batch_script).read_text("utf-8")
    else:
        text = profile.template_text()
    values = {
        "partition": opts.partition or profile.default_partition,
        "account": opts.account or profile.default_account or "",
        "time_minutes": str(time_minutes),
        "workdir": opts.notebook_dir or "${HOME}",
        "gpus": str(opts.gpus) if opts.gpus > 0 else "",
        "service_cmd": _SERVICE_COMMANDS[service],
        "container_prefix": container_prefix,
        "token": token_label,
        "management_url": profile.management_url,
        "port_range_low": str(profile.port_range[0]),
        "port_range_high": str(profile.port_range[1]),
    }
    return render_template(text, values)
