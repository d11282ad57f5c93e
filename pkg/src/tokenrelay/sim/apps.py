"""Fake upstream applications standing in for a notebook server.

One threaded HTTP server per app instance, bound to loopback, carrying a
sentinel string so isolation tests can prove which app produced a response.

Endpoints:
  GET  /            -> text page containing the sentinel and the path
  GET  /headers     -> JSON dump of the request headers as received
  GET  /bytes?n=&seed= -> n deterministic pseudo-random bytes
  GET  /chunked?parts= -> chunked-transfer response
  GET  /slow?parts=&delay= -> dribbles parts with real delays between them
  POST /echo        -> echoes the request body and Content-Type back
  any WebSocket upgrade -> frame echo

Behavior quirks for scenario testing: SLOW_RESPONSE delays the first byte of
every response.
"""
from __future__ import annotations

import json
import random
import time
from urllib.parse import parse_qs, urlsplit

from ..httpd import HttpListener, QuietHandler
from . import ws


class EchoApp:
    def __init__(self, sentinel: str = "echo-app", slow_first_byte_s: float = 0.0, host: str = "127.0.0.1", port: int = 0):
        self.sentinel = sentinel
        self.slow_first_byte_s = slow_first_byte_s
        outer = self

        class Handler(QuietHandler):
            def _maybe_sleep(self):
                if outer.slow_first_byte_s:
                    time.sleep(outer.slow_first_byte_s)

            def do_GET(self):
                if self.headers.get("Upgrade", "").lower() == "websocket":
                    ws.serve_ws_echo(self)
                    return
                self._maybe_sleep()
                url = urlsplit(self.path)
                query = {k: v[0] for k, v in parse_qs(url.query).items()}
                if url.path == "/headers":
                    body = json.dumps(dict(self.headers.items())).encode()
                    self._send(200, body, "application/json")
                elif url.path == "/bytes":
                    n = int(query.get("n", "1024"))
                    seed = int(query.get("seed", "0"))
                    body = random.Random(seed).randbytes(n)
                    self._send(200, body, "application/octet-stream")
                elif url.path == "/chunked":
                    parts = int(query.get("parts", "4"))
                    self.send_response(200)
                    self.send_header("Content-Type", "text/plain")
                    self.send_header("Transfer-Encoding", "chunked")
                    self.end_headers()
                    for i in range(parts):
                        chunk = f"part-{i}-of-{outer.sentinel};".encode()
                        self.wfile.write(b"%x\r\n%s\r\n" % (len(chunk), chunk))
                    self.wfile.write(b"0\r\n\r\n")
                elif url.path == "/slow":
                    parts = int(query.get("parts", "3"))
                    delay = float(query.get("delay", "0.2"))
                    self.send_response(200)
                    self.send_header("Content-Type", "text/plain")
                    self.send_header("Transfer-Encoding", "chunked")
                    self.end_headers()
                    try:
                        for i in range(parts):
                            chunk = f"slow-{i};".encode()
                            self.wfile.write(b"%x\r\n%s\r\n" % (len(chunk), chunk))
                            self.wfile.flush()
                            time.sleep(delay)
                        self.wfile.write(b"0\r\n\r\n")
                    except OSError:
                        self.close_connection = True
                else:
                    body = f"upstream:{outer.sentinel}:{url.path}".encode()
                    self._send(200, body, "text/plain", {"X-App": outer.sentinel})

            def do_HEAD(self):
                self._maybe_sleep()
                body = f"upstream:{outer.sentinel}:{urlsplit(self.path).path}".encode()
                self._send(200, body, "text/plain", {"X-App": outer.sentinel})

            def do_POST(self):
                self._maybe_sleep()
                length = int(self.headers.get("Content-Length") or 0)
                body = self.rfile.read(length)
                ctype = self.headers.get("Content-Type", "application/octet-stream")
                self._send(200, body, ctype, {"X-App": outer.sentinel})

            def _send(self, status, body: bytes, ctype: str, extra: dict | None = None):
                self.send_response(status)
                self.send_header("Content-Type", ctype)
                self.send_header("Content-Length", str(len(body)))
                for k, v in (extra or {}).items():
                    self.send_header(k, v)
                self.end_headers()
                if self.command != "HEAD":
                    self.wfile.write(body)

        self.listener = HttpListener(host, port, Handler)

    @property
    def port(self) -> int:
        return self.listener.port

    @property
    def ip(self) -> str:
        return self.listener.host

    def start(self) -> "EchoApp":
        self.listener.start()
        return self

    def stop(self) -> None:
        self.listener.stop()


class AppHandle:
    """Start/stop wrapper used by the simulated scheduler: tracks whether the
    job's app is currently alive."""

    def __init__(self, sentinel: str, port: int, slow_first_byte_s: float = 0.0):
        self.app = EchoApp(sentinel=sentinel, slow_first_byte_s=slow_first_byte_s, port=port)
        self.alive = False

    def start(self) -> None:
        self.app.start()
        self.alive = True

    def kill(self) -> None:
        if self.alive:
            self.app.stop()
            self.alive = False
