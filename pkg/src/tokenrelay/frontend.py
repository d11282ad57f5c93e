"""Public data plane: TLS termination, Host-based routing, reverse proxy.

Every request is routed purely on its Host header: ``<label>.<domain>``
with an active mapping proxies to the mapped internal target, a live but
unmapped label gets the placeholder page, anything else is an anonymous 404
(never disclosing whether a label existed). Exactly one subdomain label is
consumed; deeper hostnames do not resolve, which keeps browser cookie
scoping strictly per-application.

Proxying is plaintext HTTP to the internal target, streamed both ways.
WebSocket upgrades are relayed verbatim: after forwarding the 101 the proxy
pumps raw bytes in both directions and never interprets frames. Upstream
dialing refuses privileged ports outright as a last line of defense; the
registry should never hand such a mapping out.
"""
from __future__ import annotations

import contextlib
import logging
import socket
import ssl
import threading
from dataclasses import dataclass
from http.client import HTTPConnection, HTTPResponse
from typing import Optional

from .httpd import HttpListener, QuietHandler
from .logutil import label_digest, log_event
from .pages import PageSet
from .registry import RouteKind, TokenRegistry
from .status import JobStatusReport, StatusBoard

logger = logging.getLogger(__name__)

CHUNK = 64 * 1024

# RFC 9110 hop-by-hop headers; stripped on both legs for plain HTTP relays.
_HOP_BY_HOP = {
    "connection",
    "keep-alive",
    "proxy-authenticate",
    "proxy-authorization",
    "te",
    "trailer",
    "trailers",
    "transfer-encoding",
    "upgrade",
}


class PrivilegedDialRefused(Exception):
    """Raised instead of ever connecting to a port below 1024."""


def dial_upstream(ip: str, port: int, timeout: float) -> socket.socket:
    """The single place upstream connections are made; the privileged-port
    floor is enforced here so no routing bug can bypass it."""
    if port < 1024:
        raise PrivilegedDialRefused(f"refusing to dial privileged port {port}")
    return socket.create_connection((ip, port), timeout=timeout)


@dataclass(frozen=True)
class TlsFiles:
    cert_path: str
    key_path: str


@dataclass
class FrontendConfig:
    bind_host: str
    bind_port: int
    public_domain: str
    tls: Optional[TlsFiles] = None
    dev_plaintext: bool = False
    connect_timeout_s: int = 5
    read_timeout_s: int = 60
    max_header_bytes: int = 32768
    pending_refresh_s: int = 15
    expiry_grace: str = "drain"  # or "kill"
    pages_dir: Optional[str] = None


@dataclass(frozen=True)
class RouteDecision:
    kind: RouteKind
    label: Optional[str] = None
    target: Optional[tuple[str, int]] = None
    status: Optional[JobStatusReport] = None


class Router:
    """Maps a raw Host header to a routing decision against the registry."""

    def __init__(self, registry: TokenRegistry, status_board: StatusBoard, public_domain: str):
        self._registry = registry
        self._board = status_board
        self._suffix = "." + public_domain.strip().strip(".").lower()

    def resolve_host(self, host_header: Optional[str]) -> RouteDecision:
        label = self._extract_label(host_header)
        if label is None:
            return RouteDecision(RouteKind.NOT_FOUND)
        kind, target, record = self._registry.route_state(label)
        if kind is RouteKind.PROXY:
            return RouteDecision(RouteKind.PROXY, label=label, target=target)
        if kind is RouteKind.PENDING:
            status = self._board.get(record.job_id) if record.job_id else None
            return RouteDecision(RouteKind.PENDING, label=label, status=status)
        return RouteDecision(RouteKind.NOT_FOUND, label=label)

    def _extract_label(self, host_header: Optional[str]) -> Optional[str]:
        if not host_header:
            return None
        host = host_header.strip().lower()
        if host.startswith("["):  # IPv6 literal: never a token host
            return None
        head, sep, tail = host.rpartition(":")
        if sep and tail.isdigit():
            host = head
        if host.endswith("."):
            host = host[:-1]
        if not host.endswith(self._suffix):
            return None
        label = host[: -len(self._suffix)]
        if not label or "." in label:
            return None
        if len(label) > 63 or not all(
            part and part.isalnum() for part in label.split("-")
        ):
            return None
        return label


class RelayTracker:
    """In-flight relay bookkeeping so expiry can optionally kill streams."""

    def __init__(self):
        self._lock = threading.Lock()
        self._live: dict[str, set[tuple]] = {}

    @contextlib.contextmanager
    def track(self, label: str, *socks):
        entry = tuple(socks)
        with self._lock:
            self._live.setdefault(label, set()).add(entry)
        try:
            yield
        finally:
            with self._lock:
                group = self._live.get(label)
                if group is not None:
                    group.discard(entry)
                    if not group:
                        del self._live[label]

    def kill(self, label: str) -> int:
        with self._lock:
            entries = list(self._live.get(label, ()))
        for entry in entries:
            for sock in entry:
                with contextlib.suppress(OSError):
                    sock.shutdown(socket.SHUT_RDWR)
                with contextlib.suppress(OSError):
                    sock.close()
        return len(entries)

    def live_count(self) -> int:
        with self._lock:
            return sum(len(v) for v in self._live.values())


def _split_connection_tokens(headers) -> set[str]:
    tokens = set()
    for value in headers.get_all("Connection") or []:
        tokens.update(t.strip().lower() for t in value.split(",") if t.strip())
    return tokens


def _is_websocket_upgrade(headers) -> bool:
    return (
        headers.get("Upgrade", "").strip().lower() == "websocket"
        and "upgrade" in _split_connection_tokens(headers)
    )


class FrontendServer:
    def __init__(
        self,
        cfg: FrontendConfig,
        router: Router,
        pages: Optional[PageSet] = None,
    ):
        if bool(cfg.tls) == bool(cfg.dev_plaintext):
            raise ValueError("exactly one of tls / dev_plaintext must be enabled")
        self.cfg = cfg
        self.router = router
        self.pages = pages or PageSet(cfg.pages_dir, cfg.pending_refresh_s)
        self.tracker = RelayTracker()
        tls_context = None
        if cfg.tls is not None:
            tls_context = ssl.SSLContext(ssl.PROTOCOL_TLS_SERVER)
            tls_context.load_cert_chain(cfg.tls.cert_path, cfg.tls.key_path)
        outer = self

        class Handler(_ProxyHandler):
            frontend = outer

        self.listener = HttpListener(cfg.bind_host, cfg.bind_port, Handler, tls_context)

    @property
    def port(self) -> int:
        return self.listener.port

    def start(self) -> None:
        self.listener.start()

    def stop(self) -> None:
        self.listener.stop()

    def on_deactivated(self, labels) -> None:
        """Called after a reconcile pass removed routes. In drain mode the
        in-flight streams finish on their own; kill mode tears them down."""
        if self.cfg.expiry_grace != "kill":
            return
        for label in labels:
            n = self.tracker.kill(label)
            if n:
                log_event(logger, "relay_killed", token=label_digest(label), streams=n)


class _ProxyHandler(QuietHandler):
    frontend: FrontendServer = None  # bound by FrontendServer

    # --- entry points ----------------------------------------------------

    def _handle(self):
        decision = self.frontend.router.resolve_host(self.headers.get("Host"))
        if decision.kind is RouteKind.PROXY:
            if _is_websocket_upgrade(self.headers):
                self._relay_upgrade(decision)
            else:
                self._relay_http(decision)
        elif decision.kind is RouteKind.PENDING:
            body = self.frontend.pages.pending(decision.label, decision.status)
            self.send_html(200, body, {"Cache-Control": "no-store"})
        else:
            self.send_html(404, self.frontend.pages.not_found())

    do_GET = do_POST = do_PUT = do_DELETE = do_PATCH = do_OPTIONS = do_HEAD = _handle

    # --- plain HTTP relay --------------------------------------------------

    def _relay_http(self, decision: RouteDecision) -> None:
        ip, port = decision.target
        cfg = self.frontend.cfg
        try:
            sock = dial_upstream(ip, port, cfg.connect_timeout_s)
        except PrivilegedDialRefused:
            logger.error("blocked privileged-port dial for %s", label_digest(decision.label))
            self.send_html(502, self.frontend.pages.upstream_error(decision.label, "unreachable"))
            return
        except socket.timeout:
            self.send_html(504, self.frontend.pages.upstream_error(decision.label, "timing out"))
            return
        except OSError:
            self.send_html(502, self.frontend.pages.upstream_error(decision.label, "unreachable"))
            return

        sock.settimeout(cfg.read_timeout_s)
        conn = HTTPConnection(ip, port)
        conn.sock = sock
        client_sock = self.connection
        try:
            with self.frontend.tracker.track(decision.label, client_sock, sock):
                self._send_upstream_request(conn, ip, port)
                try:
                    resp = conn.getresponse()
                except socket.timeout:
                    self.send_html(
                        504, self.frontend.pages.upstream_error(decision.label, "timing out")
                    )
                    return
                except (ConnectionError, ssl.SSLError, OSError):
                    self.send_html(
                        502, self.frontend.pages.upstream_error(decision.label, "unreachable")
                    )
                    return
                self._stream_response(resp)
        finally:
            conn.close()

    def _send_upstream_request(self, conn: HTTPConnection, ip: str, port: int) -> None:
        conn.putrequest(self.command, self.path, skip_host=True, skip_accept_encoding=True)
        drop = _HOP_BY_HOP | _split_connection_tokens(self.headers) | {
            "host",
            "expect",
            "x-forwarded-for",
            "x-forwarded-proto",
            "x-forwarded-host",
        }
        chunked_in = "chunked" in self.headers.get("Transfer-Encoding", "").lower()
        for name, value in self.headers.items():
            if name.lower() in drop:
                continue
            conn.putheader(name, value)
        conn.putheader("Host", f"{ip}:{port}")
        peer = self.client_address[0]
        inbound_xff = self.headers.get("X-Forwarded-For")
        conn.putheader("X-Forwarded-For", f"{inbound_xff}, {peer}" if inbound_xff else peer)
        conn.putheader("X-Forwarded-Proto", "http" if self.frontend.cfg.dev_plaintext else "https")
        conn.putheader("X-Forwarded-Host", self.headers.get("Host", ""))
        if chunked_in:
            conn.putheader("Transfer-Encoding", "chunked")
        conn.endheaders()

        if chunked_in:
            self._forward_chunked_body(conn)
        else:
            length = int(self.headers.get("Content-Length") or 0)
            remaining = length
            while remaining > 0:
                data = self.rfile.read(min(CHUNK, remaining))
                if not data:
                    raise ConnectionError("client body ended early")
                conn.send(data)
                remaining -= len(data)

    def _forward_chunked_body(self, conn: HTTPConnection) -> None:
        while True:
            size_line = self.rfile.readline(self.frontend.cfg.max_header_bytes)
            if not size_line:
                raise ConnectionError("client chunked body ended early")
            conn.send(size_line)
            size = int(size_line.split(b";", 1)[0].strip() or b"0", 16)
            remaining = size + 2  # payload + CRLF
            while remaining > 0:
                data = self.rfile.read(min(CHUNK, remaining))
                if not data:
                    raise ConnectionError("client chunked body ended early")
                conn.send(data)
                remaining -= len(data)
            if size == 0:
                break

    def _stream_response(self, resp: HTTPResponse) -> None:
        no_body = (
            self.command == "HEAD"
            or resp.status in (204, 304)
            or 100 <= resp.status < 200
        )
        self.send_response_only(resp.status, resp.reason)
        has_length = resp.getheader("Content-Length") is not None and not resp.chunked
        for name, value in resp.getheaders():
            if name.lower() in _HOP_BY_HOP or name.lower() == "content-length":
                continue
            self.send_header(name, value)
        if has_length:
            self.send_header("Content-Length", resp.getheader("Content-Length"))
        chunk_out = not has_length and not no_body
        if chunk_out:
            self.send_header("Transfer-Encoding", "chunked")
        self.end_headers()

        if no_body:
            resp.read()
            return
        try:
            while True:
                data = resp.read(CHUNK)
                if not data:
                    break
                if chunk_out:
                    self.wfile.write(b"%x\r\n" % len(data))
                    self.wfile.write(data)
                    self.wfile.write(b"\r\n")
                else:
                    self.wfile.write(data)
            if chunk_out:
                self.wfile.write(b"0\r\n\r\n")
            self.wfile.flush()
        except (socket.timeout, ConnectionError, OSError):
            # mid-stream failure: nothing sensible left to send
            self.close_connection = True

    # --- websocket / upgrade relay ----------------------------------------

    def _relay_upgrade(self, decision: RouteDecision) -> None:
        ip, port = decision.target
        cfg = self.frontend.cfg
        try:
            upstream = dial_upstream(ip, port, cfg.connect_timeout_s)
        except (PrivilegedDialRefused, OSError):
            self.send_html(502, self.frontend.pages.upstream_error(decision.label, "unreachable"))
            return

        self.close_connection = True
        client = self.connection
        try:
            with self.frontend.tracker.track(decision.label, client, upstream):
                upstream.settimeout(cfg.read_timeout_s)
                upstream.sendall(self._upgrade_request_head(ip, port))
                try:
                    head, leftover = _read_http_head(upstream, cfg.max_header_bytes)
                except (socket.timeout, ConnectionError, OSError):
                    self.send_html(
                        502, self.frontend.pages.upstream_error(decision.label, "unreachable")
                    )
                    return
                status = _head_status(head)
                client.sendall(head + leftover)
                if status != 101:
                    # upstream answered with a regular response: relay the
                    # rest of it and close both sides
                    _pump(upstream, client)
                    return
                upstream.settimeout(None)
                log_event(logger, "ws_relay_open", token=label_digest(decision.label))
                reader = threading.Thread(
                    target=_pump_from_buffered, args=(self.rfile, upstream), daemon=True
                )
                reader.start()
                _pump(upstream, client)
                reader.join(timeout=cfg.read_timeout_s)
        finally:
            with contextlib.suppress(OSError):
                upstream.close()

    def _upgrade_request_head(self, ip: str, port: int) -> bytes:
        lines = [f"{self.command} {self.path} HTTP/1.1"]
        skip = {"host", "x-forwarded-for", "x-forwarded-proto", "x-forwarded-host"}
        for name, value in self.headers.items():
            if name.lower() in skip:
                continue
            lines.append(f"{name}: {value}")
        lines.append(f"Host: {ip}:{port}")
        peer = self.client_address[0]
        inbound_xff = self.headers.get("X-Forwarded-For")
        lines.append(f"X-Forwarded-For: {f'{inbound_xff}, {peer}' if inbound_xff else peer}")
        lines.append(f"X-Forwarded-Proto: {'http' if self.frontend.cfg.dev_plaintext else 'https'}")
        lines.append(f"X-Forwarded-Host: {self.headers.get('Host', '')}")
        return ("\r\n".join(lines) + "\r\n\r\n").encode("latin-1")


def _read_http_head(sock: socket.socket, limit: int) -> tuple[bytes, bytes]:
    """Read until the end of an HTTP header block; returns (head, leftover)."""
    buf = b""
    while b"\r\n\r\n" not in buf:
        if len(buf) > limit:
            raise ConnectionError("upstream response head too large")
        data = sock.recv(CHUNK)
        if not data:
            raise ConnectionError("upstream closed during response head")
        buf += data
    idx = buf.index(b"\r\n\r\n") + 4
    return buf[:idx], buf[idx:]


def _head_status(head: bytes) -> int:
    try:
        return int(head.split(b"\r\n", 1)[0].split()[1])
    except (IndexError, ValueError):
        raise ConnectionError("malformed upstream status line")


def _pump(src: socket.socket, dst: socket.socket) -> None:
    try:
        while True:
            data = src.recv(CHUNK)
            if not data:
                break
            dst.sendall(data)
    except (ConnectionError, socket.timeout, OSError):
        pass
    finally:
        with contextlib.suppress(OSError):
            dst.shutdown(socket.SHUT_WR)


def _pump_from_buffered(rfile, dst: socket.socket) -> None:
    """Client-to-upstream pump reading via the handler's buffered reader so
    bytes the client pipelined behind the upgrade request are not lost."""
    try:
        while True:
            data = rfile.read1(CHUNK)
            if not data:
                break
            dst.sendall(data)
    except (ConnectionError, socket.timeout, OSError, ValueError):
        pass
    finally:
        with contextlib.suppress(OSError):
            dst.shutdown(socket.SHUT_WR)
