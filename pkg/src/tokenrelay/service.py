"""Wires the registry, journal, both listeners and the reconciler together."""
from __future__ import annotations

import logging
import threading
from typing import Optional

from .clock import SystemClock
from .config import ServiceConfig
from .frontend import FrontendServer, Router
from .journal import Journal
from .logutil import log_event
from .management import ManagementApi, ManagementServer
from .registry import ReconcileSummary, TokenRegistry
from .status import StatusBoard

logger = logging.getLogger(__name__)

STALE_RECONCILE_FACTOR = 10


class RelayService:
    def __init__(self, cfg: ServiceConfig, clock=None, rng=None):
        self.cfg = cfg
        self.clock = clock if clock is not None else SystemClock()
        self.journal = Journal(
            cfg.journal.path,
            compact_threshold_bytes=cfg.journal.compact_bytes,
            fsync=cfg.journal.fsync,
        )
        self.registry = TokenRegistry(cfg.registry, clock=self.clock, rng=rng, journal=self.journal)
        self.board = StatusBoard()
        self.api = ManagementApi(self.registry, self.board, self.clock, self.health)
        self.management = ManagementServer(cfg.management_host, cfg.management_port, self.api)
        self.router = Router(self.registry, self.board, cfg.registry.public_domain)
        self.frontend = FrontendServer(cfg.frontend, self.router)
        self._last_reconcile: Optional[float] = None
        self._stop = threading.Event()
        self._reconciler: Optional[threading.Thread] = None

    # -- lifecycle ----------------------------------------------------------

    def start(self, run_reconciler: bool = True) -> None:
        # settle replayed state (expire anything overdue) before serving
        self.reconcile_once()
        self.management.start()
        self.frontend.start()
        if run_reconciler:
            self._reconciler = threading.Thread(target=self._reconcile_loop, daemon=True)
            self._reconciler.start()
        log_event(
            logger,
            "service_started",
            management=f"{self.management.listener.host}:{self.management.port}",
            frontend=f"{self.frontend.listener.host}:{self.frontend.port}",
            domain=self.cfg.registry.public_domain,
        )

    def stop(self) -> None:
        self._stop.set()
        if self._reconciler is not None:
            self._reconciler.join(timeout=5)
        self.frontend.stop()
        self.management.stop()
        self.journal.close()
        log_event(logger, "service_stopped")

    # -- reconciler ----------------------------------------------------------

    def reconcile_once(self) -> ReconcileSummary:
        summary = self.registry.reconcile()
        self._last_reconcile = self.clock.now()
        if summary.deactivated:
            self.frontend.on_deactivated(summary.deactivated)
        if summary.activations or summary.deactivations or summary.expired:
            log_event(
                logger,
                "reconcile",
                activations=summary.activations,
                deactivations=summary.deactivations,
                expired=len(summary.expired),
            )
        return summary

    def _reconcile_loop(self) -> None:
        interval = self.cfg.registry.reconcile_interval_s
        while not self._stop.wait(interval):
            try:
                self.reconcile_once()
            except Exception:
                logger.exception("reconcile pass failed")

    # -- health ---------------------------------------------------------------

    def health(self) -> dict:
        now = self.clock.now()
        counts = self.registry.counts()
        stale_after = STALE_RECONCILE_FACTOR * self.cfg.registry.reconcile_interval_s
        status = "ok"
        if self._last_reconcile is None or now - self._last_reconcile > stale_after:
            status = "degraded"
        return {
            "status": status,
            "active_mappings": counts["active_mappings"],
            "issued_tokens": counts["issued_tokens"],
            "last_reconcile": self._last_reconcile,
        }

    # -- convenience for tests/harness ---------------------------------------

    @property
    def management_port(self) -> int:
        return self.management.port

    @property
    def frontend_port(self) -> int:
        return self.frontend.port
