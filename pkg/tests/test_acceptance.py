"""End-to-end acceptance gate: nine criteria, each one test, exact arithmetic.

Every matrix touched by criteria 1 through 7 is recorded in _REGISTRY so
criterion 8 can re-examine the full population.  Criterion order matters;
pytest runs the functions in definition order.
"""

import random
import time
from fractions import Fraction

from oracles import drazin_candidate
from weakcomm import (CampaignConfig, RationalMatrix, TheoremId, Verdict,
                      degenerate_spectra_report, drazin, format_matrix,
                      in_comm_l, in_comm_r, in_comm_w, is_ired_pair,
                      is_ired_pair_weak, is_semiregular, pair_of_pseudo_inverse,
                      parse_matrix, question_probe, run_campaign, verify)
from weakcomm.spectra import EMPTY_SPECTRA
from weakcomm.subspace_lattice import RedPair, Subspace
from weakcomm.theorem_harness import (fixture_instances, generate_instance,
                                      parse_instance, pseudo_inverse_family)

_REGISTRY = set()


def _note(*matrices):
    for m in matrices:
        _REGISTRY.add(format_matrix(m))


def _note_reports(reports, also_sum=False):
    for rep in reports:
        inst = parse_instance(rep.instance)
        mats = list(inst.values())
        _note(*mats)
        if also_sum and len(mats) == 2:
            _note(mats[0] + mats[1])


def _line(num, label, parts):
    ok = all(parts.values())
    print("criterion {} {}: {}".format(num, label, "PASS" if ok else "FAIL"))
    for name, good in parts.items():
        assert good, "criterion {}: {}".format(num, name)


def _random_matrix(rng, dim, bound=3):
    rows = [[Fraction(rng.randint(-bound, bound)) for _ in range(dim)]
            for _ in range(dim)]
    return RationalMatrix.from_rows(rows)


def test_criterion_1_drazin_portfolio():
    rng = random.Random(90001)
    start = time.monotonic()
    checked = 0
    for k in range(500):
        dim = 2 + k % 5
        a = _random_matrix(rng, dim)
        _note(a)
        res = drazin(a)
        c = res.inverse
        ak = a ** res.index
        assert ak * a * c == ak, "defining equation failed"
        assert c * a * c == c, "outer inverse equation failed"
        assert a * c == c * a, "Drazin inverse must commute"
        assert c == drazin_candidate(a), "polynomial route disagreed"
        checked += 1
    elapsed = time.monotonic() - start
    _line(1, "drazin portfolio", {
        "500 matrices checked": checked == 500,
        "under two minutes": elapsed < 120.0,
    })


def test_criterion_2_weak_commutant_drazin_products():
    instances = list(fixture_instances(TheoremId.P2_5))
    assert all(in_comm_w(i["b"], i["a"]) for i in instances)
    seed = 0
    while len(instances) < 200:
        dim = 2 + seed % 5
        inst = generate_instance(TheoremId.P2_5, dim, 70000 + seed)
        seed += 1
        if in_comm_w(inst["b"], inst["a"]):
            instances.append(inst)
    failures = 0
    noncommuting = 0
    for inst in instances:
        a, b = inst["a"], inst["b"]
        _note(a, b, a * b)
        rep = verify(TheoremId.P2_5, inst)
        if rep.verdict is not Verdict.PASS:
            failures += 1
            continue
        da, db, dab = drazin(a).inverse, drazin(b).inverse, drazin(a * b).inverse
        assert dab == da * db, "product rule failed"
        assert da * db == db * da, "inverses must commute"
        if a * b != b * a:
            noncommuting += 1
    _line(2, "weak commutant drazin products", {
        "at least 200 instances": len(instances) >= 200,
        "zero failures": failures == 0,
        "at least 30 noncommuting": noncommuting >= 30,
    })


def test_criterion_3_quotient_bounds():
    config = CampaignConfig(dimensions=(3, 4, 5, 6), trials_per_theorem=55,
                            seed=303, min_noncommuting=30)
    result = run_campaign(config, theorems=(TheoremId.L4_1,))
    counts = result.summary["theorems"]["L4_1"]
    _note_reports(result.reports, also_sum=True)
    _line(3, "quotient bounds", {
        "not aborted": not result.summary["aborted"],
        "at least 200 passes": counts["pass"] >= 200,
        "no failures": counts["fail"] == 0,
        "noncommuting quota met": counts["quota_met"]
                                  and counts["noncommuting"] >= 30,
    })


def test_criterion_4_nilpotent_hyperspaces():
    config = CampaignConfig(dimensions=(2, 3, 4, 5, 6), trials_per_theorem=22,
                            seed=404, min_noncommuting=30)
    result = run_campaign(config, theorems=(TheoremId.T3_6,))
    counts = result.summary["theorems"]["T3_6"]
    _note_reports(result.reports, also_sum=True)
    left = right = 0
    for rep in result.reports:
        if rep.verdict is not Verdict.PASS:
            continue
        inst = parse_instance(rep.instance)
        t, n = inst["t"], inst["n"]
        if in_comm_l(n, t):
            left += 1
        if in_comm_r(n, t):
            right += 1
    _line(4, "nilpotent hyperspaces", {
        "not aborted": not result.summary["aborted"],
        "at least 100 passes": counts["pass"] >= 100,
        "no failures": counts["fail"] == 0,
        "left family present": left >= 30,
        "mirrored right family present": right >= 30,
        "at least 30 noncommuting": counts["noncommuting"] >= 30,
    })


def test_criterion_5_one_sided_spectra():
    config = CampaignConfig(dimensions=(2, 3, 4, 5, 6), trials_per_theorem=20,
                            seed=505)
    result = run_campaign(config, theorems=(TheoremId.T3_9iii,))
    counts = result.summary["theorems"]["T3_9iii"]
    _note_reports(result.reports, also_sum=True)
    probed = run_campaign(config, theorems=(TheoremId.Q_probe,))
    _note_reports(probed.reports, also_sum=True)
    probe = question_probe(config)
    assert probe["pass"] == sum(1 for r in probed.reports
                                if r.verdict is Verdict.PASS)
    for witness in probe["near_miss_witnesses"]:
        near = parse_instance(witness["instance"])
        _note(near["t"], near["q"], near["t"] + near["q"])
    _line(5, "one sided spectra", {
        "not aborted": not result.summary["aborted"],
        "perturbations verified": counts["pass"] + probe["pass"] >= 200,
        "no failures": counts["fail"] == 0,
        "no counterexamples": probe["counterexamples"] == 0,
        "near misses logged": probe["near_miss_total"] >= 5,
        "near misses move spectra": probe["near_miss_spectra_changed"] >= 5,
    })


def test_criterion_6_reduction_roundtrip():
    config = CampaignConfig(dimensions=(2, 3, 4, 5, 6), trials_per_theorem=42,
                            seed=606)
    chosen = (TheoremId.L3_1, TheoremId.C3_2, TheoremId.P3_3, TheoremId.C3_4)
    result = run_campaign(config, theorems=chosen)
    _note_reports(result.reports)
    parts = {"not aborted": not result.summary["aborted"]}
    for tid in chosen:
        counts = result.summary["theorems"][tid.value]
        parts["{} at least 200 passes".format(tid.value)] = counts["pass"] >= 200
        parts["{} no failures".format(tid.value)] = counts["fail"] == 0
    samples = 0
    disagreements = 0
    rejected_pairs = 0
    attempts = 25
    c3_4 = [r for r in result.reports if r.theorem is TheoremId.C3_4
            and r.verdict is Verdict.PASS]
    for idx, rep in enumerate(c3_4):
        if samples >= 1200:
            break
        t = parse_instance(rep.instance)["t"]
        pairs = []
        for inv in pseudo_inverse_family(t):
            p = pair_of_pseudo_inverse(t, inv)
            pairs.append(p)
            pairs.append(RedPair(p.n_part, p.m_part))
        for p in pairs:
            strong = is_ired_pair(t, p)
            weak = is_ired_pair_weak(t, p, seed=idx, attempts=attempts)
            if strong != weak:
                disagreements += 1
            if strong:
                samples += attempts
            else:
                rejected_pairs += 1
    dim = 3
    eye = RationalMatrix.identity(dim)
    for split in range(1, dim):
        cols = [[Fraction(1) if r == c else Fraction(0) for c in range(split)]
                for r in range(dim)]
        rest = [[Fraction(1) if r == c + split else Fraction(0)
                 for c in range(dim - split)] for r in range(dim)]
        p = RedPair(Subspace.from_columns(RationalMatrix.from_rows(cols)),
                    Subspace.from_columns(RationalMatrix.from_rows(rest)))
        strong = is_ired_pair(eye, p)
        weak = is_ired_pair_weak(eye, p, seed=split, attempts=attempts)
        if strong != weak:
            disagreements += 1
        if not strong:
            rejected_pairs += 1
    parts["at least 1000 quantifier samples"] = samples >= 1000
    parts["no quantifier disagreement"] = disagreements == 0
    parts["rejected pairs exercised"] = rejected_pairs >= 5
    _line(6, "reduction roundtrip", parts)


def test_criterion_7_semiregular_stability():
    config = CampaignConfig(dimensions=(2, 3, 4, 5, 6), trials_per_theorem=22,
                            seed=707)
    result = run_campaign(config, theorems=(TheoremId.T3_11ii,))
    counts = result.summary["theorems"]["T3_11ii"]
    _note_reports(result.reports, also_sum=True)
    stable = 0
    passed = [r for r in result.reports if r.verdict is Verdict.PASS]
    for rep in passed:
        inst = parse_instance(rep.instance)
        if is_semiregular(inst["t"] + inst["q"]):
            stable += 1
    _line(7, "semiregular stability", {
        "not aborted": not result.summary["aborted"],
        "at least 100 passes": counts["pass"] >= 100,
        "no failures": counts["fail"] == 0,
        "perturbed operators semiregular": stable == len(passed),
    })


def test_criterion_8_degenerate_spectra_everywhere():
    assert len(_REGISTRY) >= 500, "earlier criteria must populate the registry"
    bad = 0
    for text in sorted(_REGISTRY):
        m = parse_matrix(text)
        rep = degenerate_spectra_report(m)
        good = (rep.essential_ascent == 0 and rep.essential_descent == 0
                and rep.essential_degree == 0
                and rep.squarefree_factor_rank == 0
                and rep.restriction_kernel_dims == rep.restriction_cokernel_dims
                and rep.empty_spectra == EMPTY_SPECTRA
                and rep.acc_spectrum_empty and rep.drazin_bf_identity
                and rep.browder_essential_identity)
        if not good:
            bad += 1
    _line(8, "degenerate spectra everywhere", {
        "registry populated": len(_REGISTRY) >= 500,
        "every matrix degenerate": bad == 0,
    })


def test_criterion_9_campaign_determinism():
    first = run_campaign(CampaignConfig())
    second = run_campaign(CampaignConfig())
    _line(9, "campaign determinism", {
        "first run clean": not first.summary["aborted"],
        "byte identical reports": first.to_json() == second.to_json(),
    })
