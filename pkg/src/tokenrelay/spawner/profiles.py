"""Per-HPC-system client configuration.

One YAML document lists the known systems; the launcher picks the profile
whose hostname pattern matches the login node it is running on (first match
in file order wins, so users can reorder to override). The packaged default
config ships a catch-all SIMULATED profile so the tool works out of the box
for local testing. See data/profiles.schema.json for the published schema.
"""
from __future__ import annotations

import fnmatch
import importlib.resources
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

import yaml

from .errors import NoMatchingSystem, ValidationError

CONFIG_ENV = "TOKENRELAY_PROFILES"
USER_CONFIG_RELPATH = "tokenrelay/profiles.yaml"
SYSTEM_CONFIG_PATH = "/etc/tokenrelay/profiles.yaml"


class SchedulerKind(str, Enum):
    SLURM_COMMAND = "SLURM_COMMAND"
    SIMULATED = "SIMULATED"


@dataclass
class SystemProfile:
    name: str
    hostname_patterns: list[str]
    management_url: str
    public_domain: str
    scheduler: SchedulerKind
    default_partition: str
    default_time_minutes: int
    max_time_minutes: int
    template_path: str
    default_account: Optional[str] = None
    submit_command: str = "sbatch"
    port_range: tuple[int, int] = (8000, 8999)

    def __post_init__(self):
        if not self.hostname_patterns:
            raise ValidationError(f"profile {self.name}: hostname_patterns must be non-empty")
        if self.default_time_minutes > self.max_time_minutes:
            raise ValidationError(
                f"profile {self.name}: default_time_minutes exceeds max_time_minutes"
            )

    def template_text(self) -> str:
        """Resolve the batch template; ``builtin:<name>`` refers to the
        templates shipped with the package."""
        if self.template_path.startswith("builtin:"):
            name = self.template_path.split(":", 1)[1]
            return (
                importlib.resources.files("tokenrelay.spawner")
                .joinpath(f"templates/{name}")
                .read_text("utf-8")
            )
        return Path(self.template_path).read_text("utf-8")


def profile_from_dict(doc: dict) -> SystemProfile:
    try:
        kind = SchedulerKind(doc.get("scheduler", "SLURM_COMMAND"))
    except ValueError:
        raise ValidationError(f"unknown scheduler kind: {doc.get('scheduler')!r}") from None
    port_range = doc.get("port_range", [8000, 8999])
    return SystemProfile(
        name=doc["name"],
        hostname_patterns=list(doc["hostname_patterns"]),
        management_url=str(doc["management_url"]).rstrip("/"),
        public_domain=doc["public_domain"],
        scheduler=kind,
        default_partition=doc["default_partition"],
        default_time_minutes=int(doc.get("default_time_minutes", 30)),
        max_time_minutes=int(doc.get("max_time_minutes", 48 * 60)),
        template_path=doc.get("template_path", "builtin:slurm_notebook.sh"),
        default_account=doc.get("default_account"),
        submit_command=doc.get("submit_command", "sbatch"),
        port_range=(int(port_range[0]), int(port_range[1])),
    )


def load_profiles(path: str | Path) -> list[SystemProfile]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh) or {}
    docs = raw.get("profiles")
    if not docs:
        raise ValidationError(f"no profiles defined in {path}")
    try:
        return [profile_from_dict(d) for d in docs]
    except KeyError as exc:
        raise ValidationError(f"profile missing required field {exc} in {path}") from None


def default_profiles() -> list[SystemProfile]:
    text = (
        importlib.resources.files("tokenrelay.spawner")
        .joinpath("data/profiles.yaml")
        .read_text("utf-8")
    )
    return [profile_from_dict(d) for d in yaml.safe_load(text)["profiles"]]


def resolve_config_path(flag_value: Optional[str] = None) -> Optional[Path]:
    """Config location precedence: flag, environment, per-user dir,
    system-wide path. None means fall back to the packaged defaults."""
    if flag_value:
        return Path(flag_value)
    env = os.environ.get(CONFIG_ENV)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CONFIG_HOME") or os.path.expanduser("~/.config")
    user_path = Path(xdg) / USER_CONFIG_RELPATH
    if user_path.exists():
        return user_path
    system_path = Path(SYSTEM_CONFIG_PATH)
    if system_path.exists():
        return system_path
    return None


def load_effective_profiles(flag_value: Optional[str] = None) -> list[SystemProfile]:
    path = resolve_config_path(flag_value)
    if path is None:
        return default_profiles()
    return load_profiles(path)


def detect_system(hostname: str, profiles: Sequence[SystemProfile]) -> SystemProfile:
    """First profile whose any hostname pattern matches, in file order."""
    for profile in profiles:
        for pattern in profile.hostname_patterns:
            if fnmatch.fnmatch(hostname, pattern):
                return profile
    known = ", ".join(p.name for p in profiles) or "(none)"
    raise NoMatchingSystem(
        f"hostname {hostname!r} matches no configured system; known systems: {known}"
    )
