"""Just-enough RFC 6455 WebSocket framing for the fake notebook app and the
test clients.

The proxy itself never parses frames (it relays raw bytes after the 101), so
this codec doubles as the independent implementation that relay tests are
checked against.
"""
from __future__ import annotations

import base64
import hashlib
import os
import socket
import struct

WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"

OP_CONT = 0x0
OP_TEXT = 0x1
OP_BINARY = 0x2
OP_CLOSE = 0x8
OP_PING = 0x9
OP_PONG = 0xA


def accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + WS_GUID).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


def encode_frame(opcode: int, payload: bytes, mask: bool = False, fin: bool = True) -> bytes:
    head = bytes([(0x80 if fin else 0) | opcode])
    mask_bit = 0x80 if mask else 0
    n = len(payload)
    if n < 126:
        head += bytes([mask_bit | n])
    elif n < 1 << 16:
        head += bytes([mask_bit | 126]) + struct.pack(">H", n)
    else:
        head += bytes([mask_bit | 127]) + struct.pack(">Q", n)
    if mask:
        key = os.urandom(4)
        masked = bytes(b ^ key[i % 4] for i, b in enumerate(payload))
        return head + key + masked
    return head + payload


def read_exact(rfile, n: int) -> bytes:
    buf = b""
    while len(buf) < n:
        data = rfile.read(n - len(buf))
        if not data:
            raise ConnectionError("peer closed mid-frame")
        buf += data
    return buf


def read_frame(rfile) -> tuple[int, bytes, bool]:
    """Returns (opcode, unmasked payload, fin)."""
    b1, b2 = read_exact(rfile, 2)
    fin = bool(b1 & 0x80)
    opcode = b1 & 0x0F
    masked = bool(b2 & 0x80)
    n = b2 & 0x7F
    if n == 126:
        (n,) = struct.unpack(">H", read_exact(rfile, 2))
    elif n == 127:
        (n,) = struct.unpack(">Q", read_exact(rfile, 8))
    key = read_exact(rfile, 4) if masked else None
    payload = read_exact(rfile, n)
    if key:
        payload = bytes(b ^ key[i % 4] for i, b in enumerate(payload))
    return opcode, payload, fin


def close_payload(code: int, reason: str = "") -> bytes:
    return struct.pack(">H", code) + reason.encode("utf-8")


def parse_close(payload: bytes) -> tuple[int, str]:
    if len(payload) < 2:
        return 1005, ""
    (code,) = struct.unpack(">H", payload[:2])
    return code, payload[2:].decode("utf-8", "replace")


class WsClient:
    """Blocking WebSocket client used by tests and the simulated browser."""

    def __init__(
        self,
        ip: str,
        port: int,
        path: str = "/",
        host_header: str | None = None,
        timeout: float = 10.0,
        extra_headers: dict | None = None,
    ):
        self.sock = socket.create_connection((ip, port), timeout=timeout)
        self.rfile = self.sock.makefile("rb")
        key = base64.b64encode(os.urandom(16)).decode("ascii")
        host = host_header or f"{ip}:{port}"
        lines = [
            f"GET {path} HTTP/1.1",
            f"Host: {host}",
            "Upgrade: websocket",
            "Connection: Upgrade",
            f"Sec-WebSocket-Key: {key}",
            "Sec-WebSocket-Version: 13",
        ]
        for k, v in (extra_headers or {}).items():
            lines.append(f"{k}: {v}")
        self.sock.sendall(("\r\n".join(lines) + "\r\n\r\n").encode("ascii"))
        status_line = self.rfile.readline()
        if b" 101 " not in status_line:
            raise ConnectionError(f"upgrade refused: {status_line!r}")
        headers = {}
        while True:
            line = self.rfile.readline()
            if line in (b"\r\n", b"\n", b""):
                break
            name, _, value = line.decode("latin-1").partition(":")
            headers[name.strip().lower()] = value.strip()
        if headers.get("sec-websocket-accept") != accept_key(key):
            raise ConnectionError("bad Sec-WebSocket-Accept")

    def send_text(self, text: str) -> None:
        self.sock.sendall(encode_frame(OP_TEXT, text.encode("utf-8"), mask=True))

    def send_binary(self, data: bytes) -> None:
        self.sock.sendall(encode_frame(OP_BINARY, data, mask=True))

    def send_close(self, code: int = 1000, reason: str = "") -> None:
        self.sock.sendall(encode_frame(OP_CLOSE, close_payload(code, reason), mask=True))

    def recv(self) -> tuple[int, bytes]:
        opcode, payload, _ = read_frame(self.rfile)
        return opcode, payload

    def close(self) -> None:
        try:
            self.rfile.close()
        finally:
            self.sock.close()


def serve_ws_echo(handler) -> None:
    """Complete a WS handshake on a BaseHTTPRequestHandler and echo frames
    until the client sends close (echoed back) or disconnects."""
    key = handler.headers.get("Sec-WebSocket-Key", "")
    handler.send_response_only(101, "Switching Protocols")
    handler.send_header("Upgrade", "websocket")
    handler.send_header("Connection", "Upgrade")
    handler.send_header("Sec-WebSocket-Accept", accept_key(key))
    handler.end_headers()
    handler.wfile.flush()
    handler.close_connection = True
    conn = handler.connection
    rfile = handler.rfile
    while True:
        try:
            opcode, payload, fin = read_frame(rfile)
        except (ConnectionError, OSError):
            return
        if opcode == OP_CLOSE:
            with_suppress_send(conn, encode_frame(OP_CLOSE, payload))
            return
        if opcode == OP_PING:
            with_suppress_send(conn, encode_frame(OP_PONG, payload))
            continue
        with_suppress_send(conn, encode_frame(opcode, payload))


def with_suppress_send(conn: socket.socket, data: bytes) -> None:
    try:
        conn.sendall(data)
    except OSError:
        pass
