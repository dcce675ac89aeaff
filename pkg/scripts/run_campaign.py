"""Run a verification campaign from the command line and write its report.

Thin experiment runner over run_campaign for poking at trial counts, seeds,
and worker pools without going through the packaged CLI.  Prints one summary
line per theorem plus wall-clock timing; exits nonzero when any batch fails
so shell loops can stop on the first counterexample.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weakcomm.theorem_harness import (CampaignConfig, TheoremId, run_campaign,
                                      write_report)


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="2,3,4,5,6",
                        help="comma separated dimensions")
    parser.add_argument("--trials", type=int, default=4,
                        help="trials per theorem per dimension")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bound", type=int, default=3,
                        help="entry bound for generated matrices")
    parser.add_argument("--min-noncommuting", type=int, default=0,
                        help="per-theorem quota of strictly non-commuting passes")
    parser.add_argument("--workers", type=int, default=0,
                        help="process pool size, 0 keeps the sequential path")
    parser.add_argument("--theorem", action="append", default=[],
                        help="restrict to this theorem id, repeatable")
    parser.add_argument("--report", default="campaign_report.json",
                        help="where to write the JSON report")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    dims = tuple(int(d) for d in args.dims.split(","))
    config = CampaignConfig(dimensions=dims, trials_per_theorem=args.trials,
                            seed=args.seed, entry_bound=args.bound,
                            min_noncommuting=args.min_noncommuting)
    theorems = None
    if args.theorem:
        by_value = {t.value: t for t in TheoremId}
        unknown = [t for t in args.theorem if t not in by_value]
        if unknown:
            print("unknown theorem ids: {}".format(", ".join(unknown)),
                  file=sys.stderr)
            return 2
        theorems = tuple(by_value[t] for t in args.theorem)
    if args.workers > 0:
        os.environ["WEAKCOMM_WORKERS"] = str(args.workers)
    start = time.monotonic()
    result = run_campaign(config, theorems=theorems)
    elapsed = time.monotonic() - start
    for tid, counts in sorted(result.summary["theorems"].items()):
        print("{:12s} pass={:4d} fail={:d} unmet={:d} starved={:d} "
              "noncommuting={:d}".format(
                  tid, counts["pass"], counts["fail"],
                  counts["hypotheses-unmet"], counts["starved"],
                  counts["noncommuting"]))
    write_report(result, args.report)
    print("{} reports in {:.1f}s -> {}".format(
        len(result.reports), elapsed, args.report))
    if result.summary["aborted"]:
        failure = result.summary["first_failure"]
        print("FAILED at {} seed {}".format(failure["theorem"],
                                            failure["seed"]))
        print(json.dumps(failure["shrunk_instance"], indent=2, sort_keys=True))
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
