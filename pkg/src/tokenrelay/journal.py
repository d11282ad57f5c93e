"""Append-only change journal for the registry.

One JSON object per line, one line per state transition:
``{"seq", "ts", "op", "token", "args", "state", "record"}``. ``record`` is a
full snapshot of the token record after the transition, so replay is a plain
upsert and reproduces registry state exactly without re-running any logic.
Compaction rewrites the file as a single ``snapshot`` line once it grows past
the threshold; the sequence number keeps increasing across compactions.

A torn final line (crash mid-append) is tolerated and dropped on replay;
garbage anywhere else is corruption and raises.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Iterator, Optional

logger = logging.getLogger(__name__)

DEFAULT_COMPACT_BYTES = 16 * 1024 * 1024


class JournalCorrupt(Exception):
    pass


class Journal:
    def __init__(
        self,
        path: str | Path,
        compact_threshold_bytes: int = DEFAULT_COMPACT_BYTES,
        fsync: bool = False,
    ):
        self._path = Path(path)
        self._threshold = compact_threshold_bytes
        self._fsync = fsync
        self._lock = threading.Lock()
        self._seq = 0
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self._path, "a", encoding="utf-8")

    @property
    def path(self) -> Path:
        return self._path

    @property
    def seq(self) -> int:
        return self._seq

    def replay(self) -> Iterator[dict]:
        """Yield journal entries in order; advances the sequence counter so
        appends after replay continue the numbering."""
        with self._lock:
            if not self._path.exists():
                return
            with open(self._path, "r", encoding="utf-8") as fh:
                lines = fh.readlines()
            for i, line in enumerate(lines):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    if i == len(lines) - 1:
                        logger.warning("journal: dropping torn final line")
                        break
                    raise JournalCorrupt(f"unparseable journal line {i + 1}")
                self._seq = max(self._seq, int(entry["seq"]))
                yield entry

    def append(
        self,
        op: str,
        token: str,
        args: dict,
        state: Optional[str],
        record: Optional[dict],
        ts: float,
    ) -> int:
        with self._lock:
            self._seq += 1
            entry = {
                "seq": self._seq,
                "ts": ts,
                "op": op,
                "token": token,
                "args": args,
                "state": state,
                "record": record,
            }
            self._fh.write(json.dumps(entry, separators=(",", ":")) + "\n")
            self._fh.flush()
            if self._fsync:
                os.fsync(self._fh.fileno())
            return self._seq

    def needs_compaction(self) -> bool:
        with self._lock:
            try:
                return self._fh.tell() > self._threshold
            except ValueError:
                return False

    def compact(self, records: list[dict], terminal_at: dict[str, float], ts: float) -> None:
        """Atomically replace the log with one snapshot entry."""
        with self._lock:
            self._seq += 1
            entry = {
                "seq": self._seq,
                "ts": ts,
                "op": "snapshot",
                "records": records,
                "terminal_at": terminal_at,
            }
            fd, tmp = tempfile.mkstemp(dir=self._path.parent, prefix=".journal-", suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as tmpfh:
                    tmpfh.write(json.dumps(entry, separators=(",", ":")) + "\n")
                    tmpfh.flush()
                    os.fsync(tmpfh.fileno())
                self._fh.close()
                os.replace(tmp, self._path)
            except BaseException:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise
            finally:
                self._fh = open(self._path, "a", encoding="utf-8")
            logger.info("journal compacted to %d records at seq %d", len(records), self._seq)

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.close()
