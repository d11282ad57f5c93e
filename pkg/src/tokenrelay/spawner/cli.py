"""`launch-notebook`: spawn a proxied Jupyter session from a login node.

Exit codes: 0 success, 2 usage/option error, 3 no matching system profile,
4 cannot talk to the proxy service, 5 job submission failed. The only thing
written to stdout is the final URL; everything else goes to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys

from .errors import (
    CommsError,
    NoMatchingSystem,
    StageError,
    SubmitFailed,
    TemplateError,
    ValidationError,
)
from .profiles import load_effective_profiles
from .session import start_session
from .template import LaunchOptions, ServiceKind

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_SYSTEM = 3
EXIT_COMMS = 4
EXIT_SUBMIT = 5

_STAGE_EXITS = {
    "detect_system": EXIT_NO_SYSTEM,
    "issue_token": EXIT_COMMS,
    "register_job": EXIT_COMMS,
    "build_script": EXIT_USAGE,
    "submit": EXIT_SUBMIT,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="launch-notebook",
        description="Launch a Jupyter session as a batch job behind the proxy service.",
    )
    parser.add_argument("-p", dest="partition", help="partition to submit the job to")
    parser.add_argument("-d", dest="notebook_dir", help="top-level directory for the notebook")
    parser.add_argument("-A", dest="account", help="allocation (project) to charge")
    parser.add_argument("-b", dest="batch_script", help="custom batch script template to submit")
    parser.add_argument("-t", dest="time_minutes", type=int, help="wall time in minutes")
    parser.add_argument(
        "-s",
        dest="service",
        choices=["notebook", "jupyterlab"],
        help="jupyter service type (mutually exclusive with -b)",
    )
    parser.add_argument("-g", dest="gpus", type=int, default=0, help="number of GPUs")
    parser.add_argument("-i", dest="container_image", help="singularity image to run inside")
    parser.add_argument(
        "-I", dest="print_env", action="store_true",
        help="print environment variables along with submission",
    )
    parser.add_argument("--config", help="profiles file (overrides the search path)")
    parser.add_argument("--hostname", help=argparse.SUPPRESS)  # testing aid
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.batch_script and args.service:
        parser.error("-b and -s cannot be used together")

    try:
        opts = LaunchOptions(
            partition=args.partition,
            notebook_dir=args.notebook_dir,
            account=args.account,
            batch_script=args.batch_script,
            time_minutes=args.time_minutes,
            service=ServiceKind(args.service.upper()) if args.service else None,
            gpus=args.gpus,
            container_image=args.container_image,
            print_env=args.print_env,
        )
        profiles = load_effective_profiles(args.config)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.print_env:
        for key in sorted(os.environ):
            print(f"{key}={os.environ[key]}", file=sys.stderr)

    try:
        start_session(opts, profiles, hostname=args.hostname)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _STAGE_EXITS.get(exc.stage, 1)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
