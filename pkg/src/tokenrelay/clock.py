"""Injected time source.

Every component that looks at the time takes a clock object instead of
calling ``time.time()`` directly, so tests and the simulated cluster can
drive expiry deterministically.
"""
from __future__ import annotations

import threading
import time


class SystemClock:
    """Wall-clock time; ``wait`` is interruptible via ``stop``."""

    def __init__(self):
        self._stop = threading.Event()

    def now(self) -> float:
        return time.time()

    def wait(self, seconds: float) -> bool:
        """Block up to ``seconds``. Returns True if the clock was stopped."""
        return self._stop.wait(seconds)

    def stop(self) -> None:
        self._stop.set()


class ManualClock:
    """Time advances only when told to. Starts at a fixed, recognizable epoch.

    ``wait`` blocks until simulated time passes the deadline or the clock is
    stopped, so code written against SystemClock keeps working under test.
    """

    def __init__(self, start: float = 1_700_000_000.0):
        self._now = float(start)
        self._cond = threading.Condition()
        self._stopped = False

    def now(self) -> float:
        with self._cond:
            return self._now

    def advance(self, seconds: float) -> float:
        if seconds < 0:
            raise ValueError("cannot advance backwards")
        with self._cond:
            self._now += seconds
            self._cond.notify_all()
            return self._now

    def set(self, now: float) -> None:
        with self._cond:
            if now < self._now:
                raise ValueError("cannot move time backwards")
            self._now = now
            self._cond.notify_all()

    def wait(self, seconds: float) -> bool:
        with self._cond:
            deadline = self._now + seconds
            while self._now < deadline and not self._stopped:
                self._cond.wait()
            return self._stopped

    def stop(self) -> None:
        with self._cond:
            self._stopped = True
            self._cond.notify_all()
