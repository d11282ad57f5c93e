"""Job-side free-port probing.

Best effort by nature: the port is bindable at probe time, and the
application must tolerate losing the race by retrying. Candidates are tried
in random order so concurrent jobs on one node spread out.
"""
from __future__ import annotations

import random
import socket

from .errors import NoFreePort


def pick_free_port(low: int, high: int, rng: random.Random | None = None) -> int:
    if low < 1024:
        raise ValueError("port range must not include privileged ports (low >= 1024)")
    if high < low or high > 65535:
        raise ValueError(f"invalid port range [{low}, {high}]")
    candidates = list(range(low, high + 1))
    (rng or random).shuffle(candidates)
    for port in candidates:
        with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
            try:
                probe.bind(("", port))
            except OSError:
                continue
            return port
    raise NoFreePort(f"no bindable port in [{low}, {high}]")
