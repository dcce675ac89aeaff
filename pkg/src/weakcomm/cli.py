"""Command-line front end: exact computations and verification campaigns.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .exact_linalg import ParseError, ShapeError, format_matrix, parse_matrix
from .commutant import profile
from .gen_inverse import drazin
from .theorem_harness import (CampaignConfig, TheoremId, Verdict,
                              run_campaign, write_report)


def _load_matrix(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError("cannot read {}: {}".format(path, exc))
    return parse_matrix(text)


def cmd_drazin(args) -> int:
    m = _load_matrix(args.matrix_file)
    if not m.is_square:
        raise ShapeError("matrix must be square")
    result = drazin(m)
    print("index {}".format(result.index))
    print("inverse")
    sys.stdout.write(format_matrix(result.inverse))
    print("core range basis")
    sys.stdout.write(result.core_range.to_text())
    print("core kernel basis")
    sys.stdout.write(result.core_kernel.to_text())
    return 0


def cmd_profile(args) -> int:
    a = _load_matrix(args.matrix_file_a)
    b = _load_matrix(args.matrix_file_b)
    p = profile(a, b)
    for name, flag in (("in_comm", p.in_comm), ("in_comm_l", p.in_comm_l),
                       ("in_comm_r", p.in_comm_r), ("in_comm_w", p.in_comm_w)):
        print("{} {}".format(name, "true" if flag else "false"))
    for name, res in (("(ab)a-a(ab)", p.residual_aba),
                      ("(ba)b-b(ba)", p.residual_bab),
                      ("(ab)b-b(ab)", p.residual_abb),
                      ("(ba)a-a(ba)", p.residual_baa)):
        print("residual {} {}".format(name,
                                      "zero" if res.is_zero else "nonzero"))
    return 0


def _parse_dims(text: str) -> tuple:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("dims must be a comma list of ints")
    if not dims:
        raise argparse.ArgumentTypeError("dims must be nonempty")
    return dims


def cmd_verify(args) -> int:
    if args.theorem is not None:
        try:
            chosen = (TheoremId(args.theorem),)
        except ValueError:
            print("unknown theorem id: {}".format(args.theorem),
                  file=sys.stderr)
            return 2
    else:
        chosen = tuple(TheoremId)
    try:
        config = CampaignConfig(dimensions=args.dims,
                                trials_per_theorem=args.trials,
                                seed=args.seed,
                                min_noncommuting=args.min_noncommuting)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    result = run_campaign(config, theorems=chosen)
    write_report(result, args.report)
    for tid in chosen:
        counts = result.summary["theorems"][tid.value]
        print("{:13s} pass={} fail={} unmet={} starved={} noncommuting={}"
              .format(tid.value, counts["pass"], counts["fail"],
                      counts["hypotheses-unmet"], counts["starved"],
                      counts["noncommuting"]))
    print("report written to {}".format(args.report))
    if result.any_failed:
        failure = result.summary.get("first_failure", {})
        print("FAILED at {} seed {}".format(failure.get("theorem"),
                                            failure.get("seed")))
        return 1
    print("all verified")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakcomm",
        description="exact weak-commutation checks on rational matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p_drazin = sub.add_parser("drazin", help="Drazin inverse of a matrix file")
    p_drazin.add_argument("matrix_file")
    p_drazin.set_defaults(func=cmd_drazin)

    p_profile = sub.add_parser("profile",
                               help="commutation profile of a matrix pair")
    p_profile.add_argument("matrix_file_a")
    p_profile.add_argument("matrix_file_b")
    p_profile.set_defaults(func=cmd_profile)

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--theorem", help="single theorem id")
    group.add_argument("--all", action="store_true", dest="run_all")
    p_verify.add_argument("--dims", type=_parse_dims, default=(2, 3, 4, 5, 6))
    p_verify.add_argument("--trials", type=int, default=4)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--min-noncommuting", type=int, default=0)
    p_verify.add_argument("--report", default="weakcomm_report.json")
    p_verify.set_defaults(func=cmd_verify, theorem=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ShapeError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
