"""`tokenrelay-server`: run the proxy service from a config file."""
from __future__ import annotations

import argparse
import os
import signal
import sys
import threading

from .config import ConfigError, load_and_validate
from .logutil import configure_logging
from .service import RelayService

CONFIG_ENV = "TOKENRELAY_CONFIG"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tokenrelay-server",
        description="Token-authenticated reverse proxy service",
    )
    parser.add_argument(
        "--config",
        default=os.environ.get(CONFIG_ENV),
        help=f"path to the service config (or set ${CONFIG_ENV})",
    )
    parser.add_argument(
        "--check", action="store_true", help="validate the config and exit"
    )
    args = parser.parse_args(argv)
    if not args.config:
        parser.error(f"--config is required (or set ${CONFIG_ENV})")

    try:
        cfg = load_and_validate(args.config)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.check:
        print("config ok", file=sys.stderr)
        return 0

    configure_logging(cfg.log_level)
    service = RelayService(cfg)
    service.start()
    print(
        f"management on {service.management.listener.host}:{service.management_port}, "
        f"frontend on {service.frontend.listener.host}:{service.frontend_port}",
        file=sys.stderr,
        flush=True,
    )

    done = threading.Event()

    def _shutdown(signum, frame):
        done.set()

    signal.signal(signal.SIGTERM, _shutdown)
    signal.signal(signal.SIGINT, _shutdown)
    done.wait()
    service.stop()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
