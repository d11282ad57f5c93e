"""Small address helpers: CIDR trust checks and bind-address parsing."""
from __future__ import annotations

import ipaddress


def parse_cidrs(cidrs) -> list[ipaddress.IPv4Network | ipaddress.IPv6Network]:
    """Parse CIDR strings strictly; raises ValueError on malformed input."""
    return [ipaddress.ip_network(c, strict=False) for c in cidrs]


def ip_in_networks(ip: str, networks) -> bool:
    """True if ``ip`` parses and falls inside any of ``networks``."""
    try:
        addr = ipaddress.ip_address(ip)
    except ValueError:
        return False
    return any(addr in net for net in networks)


def split_bind_address(bind: str) -> tuple[str, int]:
    """Parse "host:port" (or "[v6]:port"); port must be 0-65535."""
    if bind.startswith("["):
        host, sep, port = bind.rpartition("]:")
        if not sep:
            raise ValueError(f"malformed bind address: {bind!r}")
        host = host[1:]
    else:
        host, sep, port = bind.rpartition(":")
        if not sep:
            raise ValueError(f"malformed bind address: {bind!r}")
    try:
        portnum = int(port)
    except ValueError:
        raise ValueError(f"malformed port in bind address: {bind!r}") from None
    if not 0 <= portnum <= 65535:
        raise ValueError(f"port out of range in bind address: {bind!r}")
    return host, portnum
