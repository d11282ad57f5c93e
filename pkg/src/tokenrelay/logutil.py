"""One-event-per-line structured logging helpers.

Token labels are capabilities: at info level they are logged as a short
digest only; raw labels appear at debug level and nowhere else.
"""
from __future__ import annotations

import hashlib
import logging


def label_digest(label: str) -> str:
    return "sha256:" + hashlib.sha256(label.encode("utf-8")).hexdigest()[:12]


def log_event(logger: logging.Logger, event: str, **fields) -> None:
    parts = [f"event={event}"]
    for key, value in fields.items():
        parts.append(f"{key}={value}")
    logger.info(" ".join(parts))


def configure_logging(level: str = "info") -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
