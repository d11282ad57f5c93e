"""Service configuration: one YAML document, validated in full.

Validation collects every violation instead of stopping at the first, so an
operator fixes a config in one pass. All durations are integer seconds.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from .frontend import FrontendConfig, TlsFiles
from .journal import DEFAULT_COMPACT_BYTES
from .netutil import parse_cidrs, split_bind_address
from .registry import RegistryConfig
from .words import WORD_RE, default_wordlist, load_wordlist

MIN_WORDLIST = 2048

_DNS_LABEL_RE = re.compile(r"^[a-z0-9]([a-z0-9-]{0,61}[a-z0-9])?$", re.IGNORECASE)

_LOG_LEVELS = {"debug", "info", "warning", "error"}


class ConfigError(Exception):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {v}" for v in violations))


@dataclass
class JournalConfig:
    path: str
    compact_bytes: int = DEFAULT_COMPACT_BYTES
    fsync: bool = False


@dataclass
class ServiceConfig:
    registry: RegistryConfig
    frontend: FrontendConfig
    management_host: str
    management_port: int
    journal: JournalConfig
    log_level: str = "info"


def is_valid_dns_name(name: str) -> bool:
    if not name or len(name) > 253:
        return False
    return all(_DNS_LABEL_RE.fullmatch(label) for label in name.rstrip(".").split("."))


def load_and_validate(source: str | Path | dict) -> ServiceConfig:
    """Build a ServiceConfig from a YAML path or a pre-parsed dict.

    Raises ConfigError carrying every violation found.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh) or {}
    else:
        raw = source
    violations: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(["config document must be a mapping"])

    reg = raw.get("registry") or {}
    fe = raw.get("frontend") or {}
    mgmt = raw.get("management") or {}
    jnl = raw.get("journal") or {}

    # --- registry ---------------------------------------------------------
    cidrs = reg.get("trusted_cidrs") or []
    if not cidrs:
        violations.append("registry.trusted_cidrs must list at least one CIDR block")
    else:
        try:
            parse_cidrs(cidrs)
        except ValueError as exc:
            violations.append(f"registry.trusted_cidrs: {exc}")

    domain = reg.get("public_domain") or ""
    if not is_valid_dns_name(domain):
        violations.append(f"registry.public_domain is not a valid DNS name: {domain!r}")

    durations = {}
    for key, default in [
        ("mapping_ttl_s", 24 * 3600),
        ("wall_clock_limit_s", 48 * 3600),
        ("issue_grace_s", 24 * 3600),
        ("reconcile_interval_s", 1),
        ("retention_s", 3600),
    ]:
        value = reg.get(key, default)
        if not isinstance(value, int) or value <= 0:
            violations.append(f"registry.{key} must be a positive integer of seconds")
            value = default
        durations[key] = value
    if durations["mapping_ttl_s"] > durations["wall_clock_limit_s"]:
        violations.append(
            "registry.mapping_ttl_s must not exceed registry.wall_clock_limit_s "
            f"({durations['mapping_ttl_s']} > {durations['wall_clock_limit_s']})"
        )

    wordlist = None
    wordlist_path = reg.get("wordlist_path")
    if wordlist_path is not None:
        try:
            wordlist = load_wordlist(wordlist_path)
        except (OSError, ValueError) as exc:
            violations.append(f"registry.wordlist_path: {exc}")
    effective_words = wordlist if wordlist is not None else default_wordlist()
    if len(effective_words) < MIN_WORDLIST:
        violations.append(
            f"registry wordlist has {len(effective_words)} entries; at least {MIN_WORDLIST} required"
        )
    if any(not WORD_RE.fullmatch(w) for w in effective_words):
        violations.append("registry wordlist entries must match [a-z0-9]+")

    # --- management -------------------------------------------------------
    mgmt_host, mgmt_port = "127.0.0.1", 0
    bind = mgmt.get("bind")
    if not bind:
        violations.append("management.bind is required (host:port)")
    else:
        try:
            mgmt_host, mgmt_port = split_bind_address(str(bind))
        except ValueError as exc:
            violations.append(f"management.bind: {exc}")

    # --- frontend ---------------------------------------------------------
    fe_host, fe_port = "127.0.0.1", 0
    bind = fe.get("bind")
    if not bind:
        violations.append("frontend.bind is required (host:port)")
    else:
        try:
            fe_host, fe_port = split_bind_address(str(bind))
        except ValueError as exc:
            violations.append(f"frontend.bind: {exc}")

    tls_raw = fe.get("tls")
    dev_plaintext = bool(fe.get("dev_plaintext", False))
    tls = None
    if bool(tls_raw) == dev_plaintext:
        violations.append("frontend: exactly one of tls / dev_plaintext must be enabled")
    if tls_raw:
        cert = tls_raw.get("cert", "")
        key = tls_raw.get("key", "")
        for role, p in [("cert", cert), ("key", key)]:
            if not p or not Path(p).is_file():
                violations.append(f"frontend.tls.{role} file does not exist: {p!r}")
        tls = TlsFiles(cert_path=cert, key_path=key)

    fe_durations = {}
    for key, default in [
        ("connect_timeout_s", 5),
        ("read_timeout_s", 120),
        ("pending_refresh_s", 15),
        ("max_header_bytes", 32768),
    ]:
        value = fe.get(key, default)
        if not isinstance(value, int) or value <= 0:
            violations.append(f"frontend.{key} must be a positive integer")
            value = default
        fe_durations[key] = value

    expiry_grace = fe.get("expiry_grace", "drain")
    if expiry_grace not in ("drain", "kill"):
        violations.append(f"frontend.expiry_grace must be 'drain' or 'kill', not {expiry_grace!r}")

    pages_dir = fe.get("pages_dir")
    if pages_dir is not None and not Path(pages_dir).is_dir():
        violations.append(f"frontend.pages_dir does not exist: {pages_dir!r}")

    # --- journal ----------------------------------------------------------
    journal_path = jnl.get("path")
    if not journal_path:
        violations.append("journal.path is required")
        journal_path = ""
    else:
        parent = Path(journal_path).parent
        if not parent.exists():
            try:
                parent.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                violations.append(f"journal.path parent directory not creatable: {exc}")
    compact_bytes = jnl.get("compact_bytes", DEFAULT_COMPACT_BYTES)
    if not isinstance(compact_bytes, int) or compact_bytes <= 0:
        violations.append("journal.compact_bytes must be a positive integer")
        compact_bytes = DEFAULT_COMPACT_BYTES

    log_level = str(raw.get("log_level", "info")).lower()
    if log_level not in _LOG_LEVELS:
        violations.append(f"log_level must be one of {sorted(_LOG_LEVELS)}")

    if violations:
        raise ConfigError(violations)

    registry_cfg = RegistryConfig(
        trusted_cidrs=list(cidrs),
        public_domain=domain,
        mapping_ttl_s=durations["mapping_ttl_s"],
        wall_clock_limit_s=durations["wall_clock_limit_s"],
        issue_grace_s=durations["issue_grace_s"],
        reconcile_interval_s=durations["reconcile_interval_s"],
        retention_s=durations["retention_s"],
        wordlist=wordlist,
    )
    frontend_cfg = FrontendConfig(
        bind_host=fe_host,
        bind_port=fe_port,
        public_domain=domain,
        tls=tls,
        dev_plaintext=dev_plaintext,
        connect_timeout_s=fe_durations["connect_timeout_s"],
        read_timeout_s=fe_durations["read_timeout_s"],
        max_header_bytes=fe_durations["max_header_bytes"],
        pending_refresh_s=fe_durations["pending_refresh_s"],
        expiry_grace=expiry_grace,
        pages_dir=pages_dir,
    )
    return ServiceConfig(
        registry=registry_cfg,
        frontend=frontend_cfg,
        management_host=mgmt_host,
        management_port=mgmt_port,
        journal=JournalConfig(path=journal_path, compact_bytes=compact_bytes, fsync=bool(jnl.get("fsync", False))),
        log_level=log_level,
    )
