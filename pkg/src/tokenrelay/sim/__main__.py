"""Run a simulated-cluster scenario: ``python -m tokenrelay.sim [scenario.yaml]``."""
from __future__ import annotations

import argparse
import sys
import tempfile

from .harness import ScenarioTimeout, SimScenario, run_scenario


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="python -m tokenrelay.sim")
    parser.add_argument("scenario", nargs="?", help="scenario YAML file (default: a RUNS demo)")
    parser.add_argument("--transcript", help="write the transcript as NDJSON here")
    parser.add_argument("--workdir", help="working directory (default: a temp dir)")
    args = parser.parse_args(argv)

    scenario = SimScenario.from_file(args.scenario) if args.scenario else SimScenario()
    workdir = args.workdir or tempfile.mkdtemp(prefix="tokenrelay-sim-")
    try:
        transcript = run_scenario(scenario, workdir)
    except ScenarioTimeout as exc:
        print(f"scenario timed out: {exc}", file=sys.stderr)
        return 1
    last_page = None
    for event in transcript.events:
        if event.name == "PAGE_OBSERVED":
            # collapse runs of identical page observations for readability
            if event.detail["kind"] == last_page:
                continue
            last_page = event.detail["kind"]
        detail = " ".join(f"{k}={v}" for k, v in event.detail.items())
        print(f"t={event.t - transcript.events[0].t:7.1f}s  {event.name:24s} {detail}")
    if args.transcript:
        transcript.write(args.transcript)
        print(f"transcript written to {args.transcript}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
