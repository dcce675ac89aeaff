"""Rebuild the shipped fixture corpus of non-commuting verified instances.

Campaign quota top-ups draw from these files, so every instance written here
must verify as a pass and have its designated pair strictly non-commuting.
Rerunning the script reproduces the corpus byte for byte.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from weakcomm.commutant import in_comm_w
from weakcomm.exact_linalg import format_matrix
from weakcomm.theorem_harness import (GenerationStarved, REQUIRED_KEYS,
                                      TheoremId, Verdict, derive_seed,
                                      generate_instance, verify)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "src" / "weakcomm" / "fixtures"


@dataclass(frozen=True)
class CorpusSpec:
    theorem: TheoremId
    target: int
    dims: tuple = (3, 4)
    # extra acceptance predicate on the raw instance, e.g. the comm_w
    # branch filter for the product rule corpus
    extra: object = None


def _comm_w_branch(inst):
    return in_comm_w(inst["b"], inst["a"])


CORPUS = (
    CorpusSpec(TheoremId.P2_5, 35, extra=_comm_w_branch),
    CorpusSpec(TheoremId.L4_1, 35),
    CorpusSpec(TheoremId.T3_6, 35),
    CorpusSpec(TheoremId.P2_2, 8),
    CorpusSpec(TheoremId.C2_3, 8),
    CorpusSpec(TheoremId.L2_4, 8),
    CorpusSpec(TheoremId.L3_1, 8),
    CorpusSpec(TheoremId.C3_2, 8),
    CorpusSpec(TheoremId.T3_9iii, 8),
    CorpusSpec(TheoremId.C3_10_smoke, 8),
    CorpusSpec(TheoremId.T4_2_smoke, 8),
    CorpusSpec(TheoremId.T4_3_smoke, 8),
    CorpusSpec(TheoremId.Q_probe, 8),
)


def collect(spec: CorpusSpec, budget: int = 4000):
    found = []
    keys = REQUIRED_KEYS[spec.theorem]
    for i in range(budget):
        dim = spec.dims[i % len(spec.dims)]
        seed = derive_seed("fixture-hunt", spec.theorem.value, dim, i)
        try:
            inst = generate_instance(spec.theorem, dim, seed)
        except GenerationStarved:
            continue
        if spec.extra is not None and not spec.extra(inst):
            continue
        rep = verify(spec.theorem, inst, seed)
        if rep.verdict is not Verdict.PASS or not rep.noncommuting:
            continue
        if any(inst == old for old in found):
            continue
        found.append(inst)
        if len(found) >= spec.target:
            break
    return found, keys


def write_corpus(out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    for stale in out_dir.glob("*.txt"):
        stale.unlink()
    for spec in CORPUS:
        found, keys = collect(spec)
        if len(found) < spec.target:
            print("warning: {} corpus short: {}/{}".format(
                spec.theorem.value, len(found), spec.target))
        for idx, inst in enumerate(found):
            blocks = [format_matrix(inst[k]).rstrip("\n") for k in keys]
            pair = " ".join(keys)
            blocks.append("profile: noncommuting pair ({})".format(pair))
            name = "{}_{:02d}.txt".format(spec.theorem.value.lower(), idx)
            (out_dir / name).write_text("\n\n".join(blocks) + "\n")
        print("{:13s} wrote {}".format(spec.theorem.value, len(found)))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(FIXTURE_DIR))
    args = parser.parse_args(argv)
    write_corpus(Path(args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
