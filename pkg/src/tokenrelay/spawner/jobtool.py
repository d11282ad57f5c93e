"""`tokenrelay-job`: helpers the batch script runs on the compute node."""
from __future__ import annotations

import argparse
import sys

from .client import ManagementClient
from .errors import CommsError, NoFreePort
from .ports import pick_free_port


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="tokenrelay-job")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pick-port", help="print a bindable unprivileged port")
    p.add_argument("--low", type=int, default=8000)
    p.add_argument("--high", type=int, default=8999)

    for name in ("redeem", "destroy"):
        p = sub.add_parser(name)
        p.add_argument("--url", required=True, help="management endpoint base URL")
        p.add_argument("--token", required=True)
        p.add_argument("--port", type=int, required=True)

    p = sub.add_parser("post-status", help="report batch job progress")
    p.add_argument("--url", required=True)
    p.add_argument("--job-id", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--detail")

    args = parser.parse_args(argv)
    try:
        if args.command == "pick-port":
            print(pick_free_port(args.low, args.high))
        elif args.command == "redeem":
            ManagementClient(args.url).redeem(args.token, args.port)
        elif args.command == "destroy":
            ManagementClient(args.url).destroy(args.token, args.port)
        elif args.command == "post-status":
            ManagementClient(args.url).post_job_status(args.job_id, args.state, args.detail)
    except (NoFreePort, CommsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
