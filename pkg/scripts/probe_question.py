"""Search for a counterexample to the one-sided nilpotent spectral question.

Every verified instance keeps the spectrum fixed, so a single failing trial
here would be a genuine discovery.  Alongside the search the probe logs a
near-miss corpus: nilpotent perturbations that violate the one-sided
hypothesis and demonstrably move the spectrum, which is what makes the side
condition earn its keep.  The full witness log lands in a JSON file.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weakcomm.theorem_harness import CampaignConfig, question_probe


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="2,3,4,5,6",
                        help="comma separated dimensions")
    parser.add_argument("--trials", type=int, default=20,
                        help="trials per dimension")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="near_miss_log.json",
                        help="where to write the witness log")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    dims = tuple(int(d) for d in args.dims.split(","))
    config = CampaignConfig(dimensions=dims, trials_per_theorem=args.trials,
                            seed=args.seed)
    probe = question_probe(config)
    Path(args.out).write_text(
        json.dumps(probe, indent=2, sort_keys=True) + "\n")
    print("trials={} pass={} counterexamples={}".format(
        probe["trials"], probe["pass"], probe["counterexamples"]))
    print("near misses logged={} spectra moved={}".format(
        probe["near_miss_total"], probe["near_miss_spectra_changed"]))
    print("witness log -> {}".format(args.out))
    if probe["counterexamples"]:
        print("COUNTEREXAMPLE FOUND, inspect the report")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
