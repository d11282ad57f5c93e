"""Management plane: the token-lifecycle HTTP endpoints.

Exposed only on the trusted internal network, on its own listener, with the
CGI-era calling convention kept exactly: ``/getlink.cgi``,
``/redeemtoken.cgi``, ``/destroytoken.cgi`` (params ``token`` and ``port``),
plus ``/registerjob`` (params ``token``, ``job_id``), ``/jobstatus`` (params
``job_id``, ``state``, ``detail``) and ``/healthz``. Parameters are read
from the query string or an urlencoded
body interchangeably, so batch scripts can use plain curl either way.

The peer address always comes from the transport layer; forwarding headers
are never believed here. Untrusted peers get 403 for every path, known or
not, before any other processing.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional
from urllib.parse import parse_qsl, urlsplit

from .errors import (
    AlreadyMapped,
    BadPort,
    JobConflict,
    LabelsExhausted,
    OriginForbidden,
    PrivilegedPort,
    TokenNotFound,
)
from .logutil import label_digest, log_event
from .registry import TokenRegistry
from .status import JobState, JobStatusReport, StatusBoard

logger = logging.getLogger(__name__)

OK_BODY = "OK\n"


@dataclass(frozen=True)
class ManagementRequestContext:
    peer_ip: str
    path: str
    params: dict[str, str] = field(default_factory=dict)
    method: str = "GET"


@dataclass(frozen=True)
class PlainResponse:
    status: int
    body: str
    content_type: str = "text/plain; charset=utf-8"


def parse_request_params(path_with_query: str, body: bytes, content_type: str) -> dict[str, str]:
    """Query-string and urlencoded-body params merged; body wins on clashes."""
    params = dict(parse_qsl(urlsplit(path_with_query).query, keep_blank_values=True))
    if body and content_type.split(";")[0].strip().lower() in (
        "application/x-www-form-urlencoded",
        "",
    ):
        params.update(parse_qsl(body.decode("utf-8", "replace"), keep_blank_values=True))
    return params


class ManagementApi:
    """Transport-independent endpoint logic: context in, response out."""

    def __init__(
        self,
        registry: TokenRegistry,
        status_board: StatusBoard,
        clock,
        health_provider: Optional[Callable[[], dict]] = None,
    ):
        self._registry = registry
        self._board = status_board
        self._clock = clock
        self._health_provider = health_provider

    def handle(self, ctx: ManagementRequestContext) -> PlainResponse:
        if not self._registry.is_trusted(ctx.peer_ip):
            log_event(logger, "mgmt_forbidden", peer=ctx.peer_ip, path=ctx.path)
            return PlainResponse(403, "forbidden: untrusted origin\n")
        routes = {
            "/getlink.cgi": self._getlink,
            "/redeemtoken.cgi": self._redeemtoken,
            "/destroytoken.cgi": self._destroytoken,
            "/registerjob": self._registerjob,
            "/jobstatus": self._jobstatus,
            "/healthz": self._healthz,
        }
        fn = routes.get(ctx.path)
        if fn is None:
            return PlainResponse(404, "no such endpoint\n")
        resp = fn(ctx)
        token = ctx.params.get("token")
        log_event(
            logger,
            "mgmt_request",
            peer=ctx.peer_ip,
            path=ctx.path,
            status=resp.status,
            token=label_digest(token) if token else "-",
        )
        return resp

    def _getlink(self, ctx: ManagementRequestContext) -> PlainResponse:
        if ctx.method != "GET":
            return PlainResponse(405, "use GET\n")
        try:
            rec = self._registry.issue(ctx.peer_ip)
        except OriginForbidden:
            return PlainResponse(403, "forbidden: untrusted origin\n")
        except LabelsExhausted:
            return PlainResponse(503, "no labels available, retry later\n")
        logger.debug("issued token %s to %s", rec.label, ctx.peer_ip)
        return PlainResponse(200, rec.label + "\n")

    def _redeemtoken(self, ctx: ManagementRequestContext) -> PlainResponse:
        if ctx.method not in ("GET", "POST"):
            return PlainResponse(405, "use GET or POST\n")
        token = ctx.params.get("token")
        port_raw = ctx.params.get("port")
        if not token or port_raw is None:
            return PlainResponse(400, "token and port parameters are required\n")
        try:
            port = int(port_raw)
        except ValueError:
            return PlainResponse(400, "port must be an integer\n")
        try:
            self._registry.redeem(token, port, ctx.peer_ip)
        except TokenNotFound:
            return PlainResponse(404, "no such token\n")
        except AlreadyMapped:
            return PlainResponse(409, "token already mapped\n")
        except PrivilegedPort:
            return PlainResponse(403, "privileged port refused\n")
        except BadPort:
            return PlainResponse(400, "port out of range\n")
        except OriginForbidden:
            return PlainResponse(403, "forbidden: untrusted origin\n")
        return PlainResponse(200, OK_BODY)

    def _destroytoken(self, ctx: ManagementRequestContext) -> PlainResponse:
        if ctx.method not in ("GET", "POST"):
            return PlainResponse(405, "use GET or POST\n")
        token = ctx.params.get("token")
        port_raw = ctx.params.get("port")
        if not token or port_raw is None:
            return PlainResponse(400, "token and port parameters are required\n")
        try:
            port = int(port_raw)
        except ValueError:
            return PlainResponse(400, "port must be an integer\n")
        try:
            self._registry.destroy(token, port, ctx.peer_ip)
        except TokenNotFound:
            return PlainResponse(404, "no such token\n")
        except OriginForbidden:
            return PlainResponse(403, "forbidden: only the creating host may destroy\n")
        except BadPort:
            return PlainResponse(400, "port does not match the mapping\n")
        return PlainResponse(200, OK_BODY)

    def _registerjob(self, ctx: ManagementRequestContext) -> PlainResponse:
        if ctx.method not in ("GET", "POST"):
            return PlainResponse(405, "use GET or POST\n")
        token = ctx.params.get("token")
        job_id = ctx.params.get("job_id")
        if not token or not job_id:
            return PlainResponse(400, "token and job_id parameters are required\n")
        try:
            self._registry.register_job(token, job_id, ctx.peer_ip)
        except TokenNotFound:
            return PlainResponse(404, "no such token\n")
        except JobConflict:
            return PlainResponse(409, "a different job is already registered\n")
        except OriginForbidden:
            return PlainResponse(403, "forbidden: untrusted origin\n")
        return PlainResponse(200, OK_BODY)

    def _jobstatus(self, ctx: ManagementRequestContext) -> PlainResponse:
        if ctx.method != "POST":
            return PlainResponse(405, "use POST\n")
        job_id = ctx.params.get("job_id", "")
        state_raw = ctx.params.get("state", "")
        if not job_id:
            return PlainResponse(400, "job_id parameter is required\n")
        try:
            state = JobState(state_raw)
        except ValueError:
            valid = ",".join(s.value for s in JobState)
            return PlainResponse(400, f"state must be one of {valid}\n")
        report = JobStatusReport(
            job_id=job_id,
            state=state,
            detail=ctx.params.get("detail"),
            reported_at=self._clock.now(),
        )
        self._board.put(report)
        return PlainResponse(200, OK_BODY)

    def _healthz(self, ctx: ManagementRequestContext) -> PlainResponse:
        if self._health_provider is not None:
            payload = self._health_provider()
        else:
            payload = {"status": "ok", **self._registry.counts()}
        return PlainResponse(200, json.dumps(payload) + "\n", "application/json")


class ManagementServer:
    """HTTP adapter: binds the listener and feeds requests to ManagementApi."""

    def __init__(self, host: str, port: int, api: ManagementApi):
        from .httpd import HttpListener, QuietHandler

        outer = self

        class Handler(QuietHandler):
            def _serve(self):
                length = int(self.headers.get("Content-Length") or 0)
                body = self.rfile.read(length) if length else b""
                ctx = ManagementRequestContext(
                    peer_ip=self.client_address[0],
                    path=self.path.split("?", 1)[0],
                    params=parse_request_params(
                        self.path, body, self.headers.get("Content-Type", "")
                    ),
                    method=self.command,
                )
                resp = outer.api.handle(ctx)
                self.send_plain(resp.status, resp.body, resp.content_type)

            do_GET = do_POST = do_HEAD = _serve

        self.api = api
        self.listener = HttpListener(host, port, Handler)

    @property
    def port(self) -> int:
        return self.listener.port

    def start(self) -> None:
        self.listener.start()

    def stop(self) -> None:
        self.listener.stop()
