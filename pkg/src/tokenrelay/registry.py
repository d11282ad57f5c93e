"""Authoritative token and mapping state.

A token is born ISSUED (it already resolves to a placeholder page), becomes
MAPPED when the job redeems it with a port, and ends DESTROYED (explicit
teardown) or EXPIRED (TTL or unredeemed-token timeout). The only legal
transitions are::

    ISSUED -> MAPPED      redeem
    ISSUED -> EXPIRED     unredeemed too long
    MAPPED -> DESTROYED   destroy from the creating host
    MAPPED -> EXPIRED     mapping TTL elapsed

A mapping starts inactive; the periodic reconcile pass flips it active and
installs it in the routing table (the paper-era cron job, in process). All
mutations are serialized under one lock and journaled before they are
applied, so a restart replays to the exact same state.

Validation order is part of the contract (the reference interpreter in the
test suite mirrors it): origin, existence/terminality, state, port range,
privileged port.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum
from threading import RLock
from typing import Optional, Sequence

from .clock import SystemClock
from .errors import (
    AlreadyMapped,
    BadPort,
    JobConflict,
    LabelsExhausted,
    OriginForbidden,
    PrivilegedPort,
    TokenNotFound,
)
from .netutil import ip_in_networks, parse_cidrs
from .words import LabelMaker, default_wordlist

MIN_UNPRIVILEGED_PORT = 1024


class TokenState(str, Enum):
    ISSUED = "ISSUED"
    MAPPED = "MAPPED"
    DESTROYED = "DESTROYED"
    EXPIRED = "EXPIRED"


TERMINAL_STATES = frozenset({TokenState.DESTROYED, TokenState.EXPIRED})

_ALLOWED_TRANSITIONS = frozenset(
    {
        (TokenState.ISSUED, TokenState.MAPPED),
        (TokenState.ISSUED, TokenState.EXPIRED),
        (TokenState.MAPPED, TokenState.DESTROYED),
        (TokenState.MAPPED, TokenState.EXPIRED),
    }
)


@dataclass(frozen=True)
class Mapping:
    target_ip: str
    target_port: int
    created_at: float
    expires_at: float
    creator_ip: str
    active: bool = False


@dataclass
class TokenRecord:
    label: str
    state: TokenState
    issued_at: float
    issuer_ip: str
    job_id: Optional[str] = None
    mapping: Optional[Mapping] = None

    def copy(self) -> "TokenRecord":
        return replace(self)


@dataclass
class RegistryConfig:
    trusted_cidrs: Sequence[str]
    public_domain: str
    mapping_ttl_s: int = 24 * 3600
    wall_clock_limit_s: int = 48 * 3600
    issue_grace_s: int = 24 * 3600
    reconcile_interval_s: int = 1
    retention_s: int = 3600
    issue_retry_budget: int = 64
    wordlist: Optional[Sequence[str]] = None

    @property
    def issue_ttl_s(self) -> int:
        """How long an unredeemed token lives: the longest a queued job could
        take to start, plus grace."""
        return self.wall_clock_limit_s + self.issue_grace_s


@dataclass(frozen=True)
class ReconcileSummary:
    activations: int
    deactivations: int
    expired: tuple[str, ...] = ()
    activated: tuple[str, ...] = ()
    deactivated: tuple[str, ...] = ()
    purged: tuple[str, ...] = ()


class RouteKind(str, Enum):
    PROXY = "PROXY"
    PENDING = "PENDING"
    NOT_FOUND = "NOT_FOUND"


def record_to_dict(rec: TokenRecord) -> dict:
    d = {
        "label": rec.label,
        "state": rec.state.value,
        "issued_at": rec.issued_at,
        "issuer_ip": rec.issuer_ip,
        "job_id": rec.job_id,
        "mapping": None,
    }
    if rec.mapping is not None:
        m = rec.mapping
        d["mapping"] = {
            "target_ip": m.target_ip,
            "target_port": m.target_port,
            "created_at": m.created_at,
            "expires_at": m.expires_at,
            "creator_ip": m.creator_ip,
            "active": m.active,
        }
    return d


def record_from_dict(d: dict) -> TokenRecord:
    mapping = None
    if d.get("mapping") is not None:
        mapping = Mapping(**d["mapping"])
    return TokenRecord(
        label=d["label"],
        state=TokenState(d["state"]),
        issued_at=d["issued_at"],
        issuer_ip=d["issuer_ip"],
        job_id=d.get("job_id"),
        mapping=mapping,
    )


class TokenRegistry:
    """Single source of truth for tokens, mappings and the routing table.

    All mutators take the registry lock, so per-token transitions are atomic
    and concurrent redemptions of one token linearize to exactly one winner.
    Route lookups also take the lock (briefly) and return immutable data, so
    a reader never sees a partially built mapping.
    """

    def __init__(self, config: RegistryConfig, clock=None, rng=None, journal=None):
        self._cfg = config
        self._clock = clock if clock is not None else SystemClock()
        rng = rng if rng is not None else random.SystemRandom()
        wordlist = config.wordlist if config.wordlist is not None else default_wordlist()
        self._labels = LabelMaker(wordlist, rng)
        self._trusted = parse_cidrs(config.trusted_cidrs)
        self._lock = RLock()
        self._records: dict[str, TokenRecord] = {}
        self._routes: dict[str, tuple[str, int]] = {}
        self._terminal_at: dict[str, float] = {}
        self._journal = journal
        if journal is not None:
            self._replay()

    # -- persistence ------------------------------------------------------

    def _replay(self) -> None:
        for entry in self._journal.replay():
            op = entry["op"]
            if op == "snapshot":
                self._records = {d["label"]: record_from_dict(d) for d in entry["records"]}
                self._terminal_at = dict(entry.get("terminal_at", {}))
                continue
            label = entry["token"]
            if op == "purge":
                self._records.pop(label, None)
                self._terminal_at.pop(label, None)
                continue
            rec = record_from_dict(entry["record"])
            self._records[label] = rec
            if rec.state in TERMINAL_STATES:
                self._terminal_at.setdefault(label, entry["ts"])
            else:
                self._terminal_at.pop(label, None)
        self._routes = {
            rec.label: (rec.mapping.target_ip, rec.mapping.target_port)
            for rec in self._records.values()
            if rec.state is TokenState.MAPPED and rec.mapping is not None and rec.mapping.active
        }

    def _log(self, op: str, label: str, args: dict, rec: Optional[TokenRecord], ts: float) -> None:
        if self._journal is None:
            return
        self._journal.append(
            op=op,
            token=label,
            args=args,
            state=rec.state.value if rec is not None else None,
            record=record_to_dict(rec) if rec is not None else None,
            ts=ts,
        )
        if self._journal.needs_compaction():
            self._journal.compact(
                records=[record_to_dict(r) for r in self._records.values()],
                terminal_at=dict(self._terminal_at),
                ts=ts,
            )

    # -- helpers ----------------------------------------------------------

    def _now(self, now: Optional[float]) -> float:
        return self._clock.now() if now is None else now

    def _check_trusted(self, ip: str) -> None:
        if not ip_in_networks(ip, self._trusted):
            raise OriginForbidden("address not on a trusted network")

    def _transition(self, rec: TokenRecord, new_state: TokenState) -> None:
        if (rec.state, new_state) not in _ALLOWED_TRANSITIONS:
            raise AssertionError(f"illegal transition {rec.state.value} -> {new_state.value}")
        rec.state = new_state

    # -- operations -------------------------------------------------------

    def issue(self, client_ip: str, now: Optional[float] = None) -> TokenRecord:
        """Mint a new token for the caller. The label resolves (to the
        placeholder page) as soon as this returns."""
        now = self._now(now)
        with self._lock:
            self._check_trusted(client_ip)
            label = None
            for _ in range(self._cfg.issue_retry_budget):
                candidate = self._labels.make()
                if candidate not in self._records:
                    label = candidate
                    break
            if label is None:
                raise LabelsExhausted("could not find an unused label")
            rec = TokenRecord(label=label, state=TokenState.ISSUED, issued_at=now, issuer_ip=client_ip)
            self._log("issue", label, {"client_ip": client_ip}, rec, now)
            self._records[label] = rec
            return rec.copy()

    def register_job(self, label: str, job_id: str, client_ip: str) -> TokenRecord:
        """Attach the batch JobID to a token. Idempotent for the same pair;
        a different JobID is a conflict."""
        now = self._clock.now()
        with self._lock:
            self._check_trusted(client_ip)
            rec = self._records.get(label)
            if rec is None or rec.state in TERMINAL_STATES:
                raise TokenNotFound("no live token for label")
            if rec.job_id is not None and rec.job_id != job_id:
                raise JobConflict("a different job is already registered")
            if rec.job_id == job_id:
                return rec.copy()
            rec.job_id = job_id
            self._log("register_job", label, {"job_id": job_id, "client_ip": client_ip}, rec, now)
            return rec.copy()

    def redeem(self, label: str, port: int, client_ip: str, now: Optional[float] = None) -> Mapping:
        """Exchange a token plus port for a mapping targeting the caller.

        The mapping targets the redeeming host by design: the proxy only ever
        forwards to the machine that asked for traffic.
        """
        now = self._now(now)
        with self._lock:
            self._check_trusted(client_ip)
            rec = self._records.get(label)
            if rec is None or rec.state in TERMINAL_STATES:
                raise TokenNotFound("no live token for label")
            if rec.state is TokenState.MAPPED:
                raise AlreadyMapped("token already has a mapping")
            if not isinstance(port, int) or not 1 <= port <= 65535:
                raise BadPort("port must be in 1-65535")
            if port < MIN_UNPRIVILEGED_PORT:
                raise PrivilegedPort("privileged port refused")
            mapping = Mapping(
                target_ip=client_ip,
                target_port=port,
                created_at=now,
                expires_at=now + self._cfg.mapping_ttl_s,
                creator_ip=client_ip,
                active=False,
            )
            self._transition(rec, TokenState.MAPPED)
            rec.mapping = mapping
            self._log("redeem", label, {"port": port, "client_ip": client_ip}, rec, now)
            return mapping

    def destroy(self, label: str, port: int, client_ip: str) -> None:
        """Tear a mapping down early. Only the creating host may do it, and
        it must present the mapped port (same calling shape as redeem)."""
        now = self._clock.now()
        with self._lock:
            rec = self._records.get(label)
            if rec is None or rec.state is not TokenState.MAPPED:
                raise TokenNotFound("no mapped token for label")
            assert rec.mapping is not None
            if client_ip != rec.mapping.creator_ip:
                raise OriginForbidden("only the creating host may destroy a mapping")
            if port != rec.mapping.target_port:
                raise BadPort("port does not match the mapping")
            self._transition(rec, TokenState.DESTROYED)
            rec.mapping = None
            self._terminal_at[label] = now
            self._log("destroy", label, {"port": port, "client_ip": client_ip}, rec, now)

    def expire(self, now: Optional[float] = None) -> list[str]:
        """Expire overdue records: mappings past their TTL and tokens that
        were never redeemed within the issuance TTL."""
        now = self._now(now)
        expired: list[str] = []
        with self._lock:
            for rec in self._records.values():
                if rec.state is TokenState.MAPPED and rec.mapping.expires_at <= now:
                    self._transition(rec, TokenState.EXPIRED)
                    rec.mapping = None
                elif rec.state is TokenState.ISSUED and rec.issued_at + self._cfg.issue_ttl_s <= now:
                    self._transition(rec, TokenState.EXPIRED)
                else:
                    continue
                self._terminal_at[rec.label] = now
                self._log("expire", rec.label, {}, rec, now)
                expired.append(rec.label)
        return expired

    def reconcile(self, now: Optional[float] = None) -> ReconcileSummary:
        """One pass of the periodic task that puts registry state into
        effect: expires, purges old terminal records, then syncs the routing
        table (inactive mappings become routable, terminal ones stop)."""
        now = self._now(now)
        with self._lock:
            expired = self.expire(now)
            purged = self._purge_terminal(now)
            activated: list[str] = []
            for rec in self._records.values():
                if rec.state is TokenState.MAPPED and not rec.mapping.active:
                    rec.mapping = replace(rec.mapping, active=True)
                    self._log("activate", rec.label, {}, rec, now)
                if (
                    rec.state is TokenState.MAPPED
                    and rec.mapping.active
                    and rec.label not in self._routes
                ):
                    self._routes[rec.label] = (rec.mapping.target_ip, rec.mapping.target_port)
                    activated.append(rec.label)
            deactivated = [
                label
                for label in self._routes
                if (rec := self._records.get(label)) is None
                or rec.state is not TokenState.MAPPED
                or not rec.mapping.active
            ]
            for label in deactivated:
                del self._routes[label]
            return ReconcileSummary(
                activations=len(activated),
                deactivations=len(deactivated),
                expired=tuple(expired),
                activated=tuple(activated),
                deactivated=tuple(deactivated),
                purged=tuple(purged),
            )

    def _purge_terminal(self, now: float) -> list[str]:
        overdue = [
            label
            for label, t in self._terminal_at.items()
            if t + self._cfg.retention_s <= now
        ]
        for label in overdue:
            del self._terminal_at[label]
            self._records.pop(label, None)
            self._log("purge", label, {}, None, now)
        return overdue

    # -- reads ------------------------------------------------------------

    def get(self, label: str) -> Optional[TokenRecord]:
        with self._lock:
            rec = self._records.get(label)
            return rec.copy() if rec is not None else None

    def route_state(self, label: str) -> tuple[RouteKind, Optional[tuple[str, int]], Optional[TokenRecord]]:
        """Routing view of one label: (kind, proxy target, live record).

        MAPPED-but-not-yet-activated still shows the placeholder; the page
        flips to proxied content only once the reconciler installs the route.
        """
        with self._lock:
            target = self._routes.get(label)
            if target is not None:
                return RouteKind.PROXY, target, None
            rec = self._records.get(label)
            if rec is None or rec.state in TERMINAL_STATES:
                return RouteKind.NOT_FOUND, None, None
            return RouteKind.PENDING, None, rec.copy()

    def counts(self) -> dict[str, int]:
        with self._lock:
            issued = sum(1 for r in self._records.values() if r.state is TokenState.ISSUED)
            return {"issued_tokens": issued, "active_mappings": len(self._routes)}

    def all_records(self) -> list[TokenRecord]:
        with self._lock:
            return [r.copy() for r in self._records.values()]

    def active_routes(self) -> dict[str, tuple[str, int]]:
        with self._lock:
            return dict(self._routes)

    @property
    def config(self) -> RegistryConfig:
        return self._cfg

    @property
    def trusted_networks(self):
        return list(self._trusted)

    def is_trusted(self, ip: str) -> bool:
        return ip_in_networks(ip, self._trusted)
