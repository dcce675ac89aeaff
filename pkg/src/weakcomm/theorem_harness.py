"""Executable statements over generated matrix instances.

Every statement in scope is keyed by a TheoremId and split into a hypothesis
predicate and a conclusion check, both exact.  Instances that miss the
hypotheses are reported as such rather than passing vacuously, instance
generation is deterministic per (theorem, dim, seed), and campaigns abort on
the first failure after attempting to shrink the witness.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .exact_linalg import (RationalMatrix, charpoly, format_matrix, inverse,
                           is_nilpotent, parse_matrix, rank, rational_roots)
from .subspace_lattice import (RedPair, Subspace, analytic_core, ascent,
                               colspace, descent, hyperkernel, hyperrange,
                               is_invariant, nullspace, power_chain,
                               quasinilpotent_part, subspace_intersect,
                               subspace_sum)
from .commutant import (in_comm_l, in_comm_r, in_comm_w, profile,
                        sample_comm_l, sample_comm_r, sample_comm_w,
                        sample_linear_class)
from .gen_inverse import (drazin, drazin_index, is_ired_pair,
                          is_ired_pair_weak, is_pseudo_inverse,
                          pair_of_pseudo_inverse, phi_map)
from .spectra import (degenerate_spectra_report, is_semiregular,
                      spectra_equal, spectrum)


class TheoremId(Enum):
    P2_2 = "P2_2"
    C2_3 = "C2_3"
    L2_4 = "L2_4"
    P2_5 = "P2_5"
    P2_6 = "P2_6"
    L3_1 = "L3_1"
    C3_2 = "C3_2"
    P3_3 = "P3_3"
    C3_4 = "C3_4"
    T3_6 = "T3_6"
    T3_9iii = "T3_9iii"
    C3_10_smoke = "C3_10_smoke"
    T3_11ii = "T3_11ii"
    L4_1 = "L4_1"
    T4_2_smoke = "T4_2_smoke"
    T4_3_smoke = "T4_3_smoke"
    Q_probe = "Q_probe"
    T4_9_smoke = "T4_9_smoke"


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESES_UNMET = "hypotheses-unmet"
    STARVED = "starved"


class GenerationStarved(RuntimeError):
    pass


# Keys naming the matrix pair whose commutativity classifies the instance;
# ids without a pair (single-matrix statements, or families whose hypotheses
# force commutation) never count toward non-commuting quotas.
PAIR_KEYS = {
    TheoremId.P2_2: ("a", "b"),
    TheoremId.C2_3: ("a", "b"),
    TheoremId.L2_4: ("a", "b"),
    TheoremId.P2_5: ("a", "b"),
    TheoremId.P2_6: ("a", "b"),
    TheoremId.L3_1: ("s", "t"),
    TheoremId.C3_2: ("s", "t"),
    TheoremId.P3_3: None,
    TheoremId.C3_4: None,
    TheoremId.T3_6: ("t", "n"),
    TheoremId.T3_9iii: ("t", "q"),
    TheoremId.C3_10_smoke: ("t", "n"),
    TheoremId.T3_11ii: ("t", "q"),
    TheoremId.L4_1: ("t", "s"),
    TheoremId.T4_2_smoke: ("t", "f"),
    TheoremId.T4_3_smoke: ("t", "f"),
    TheoremId.Q_probe: ("t", "q"),
    TheoremId.T4_9_smoke: None,
}

QUOTA_APPLICABLE = frozenset(
    tid for tid, keys in PAIR_KEYS.items()
    if keys is not None and tid not in (TheoremId.P2_6, TheoremId.T3_11ii))

# The L4_1 inequalities quantify over n >= 3, so smaller ambient spaces carry
# no content and campaigns skip them for that id.
MIN_DIM = {TheoremId.L4_1: 3}


def derive_seed(*parts) -> int:
    text = ":".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def serialize_instance(instance: dict) -> dict:
    return {name: format_matrix(m) for name, m in sorted(instance.items())}


def parse_instance(serialized: dict) -> dict:
    return {name: parse_matrix(text) for name, text in serialized.items()}


@dataclass(frozen=True)
class VerificationReport:
    theorem: TheoremId
    seed: int
    instance: dict
    verdict: Verdict
    witness: dict
    noncommuting: bool

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "seed": self.seed,
            "instance": dict(sorted(self.instance.items())),
            "verdict": self.verdict.value,
            "witness": dict(sorted(self.witness.items())),
            "noncommuting": self.noncommuting,
        }


def _comm(x: RationalMatrix, y: RationalMatrix) -> bool:
    return x * y == y * x


def _matpow(m: RationalMatrix, k: int) -> RationalMatrix:
    return m ** k


def pseudo_inverse_family(a: RationalMatrix, cap: int = 6) -> tuple:
    """Distinct pseudo inverses of a: the Drazin inverse, zero, and the
    inverses obtained by zeroing one rational nonzero eigenvalue's primary
    component at a time.
    """
    core = drazin(a)
    family = [core.inverse]
    zero = RationalMatrix.zeros(a.rows, a.rows)
    if zero not in family:
        family.append(zero)
    n = a.rows
    full_power = power_chain(a)[n]
    for lam in rational_roots(charpoly(a)):
        if lam == 0 or len(family) >= cap:
            continue
        shifted = a - RationalMatrix.identity(n).scale(lam)
        shifted_power = power_chain(shifted)[n]
        m_part = subspace_intersect(colspace(full_power),
                                    colspace(shifted_power))
        n_part = subspace_sum(nullspace(full_power), nullspace(shifted_power))
        c = phi_map(a, RedPair(m_part, n_part))
        assert is_pseudo_inverse(a, c), "primary-split candidate is not a pseudo inverse"
        if c not in family:
            family.append(c)
    return tuple(family)


# --- hypothesis predicates -------------------------------------------------

def _hyp_P2_2(inst):
    a, b = inst["a"], inst["b"]
    return _comm(b * a, a) or _comm(a * b, a) or in_comm_w(b, a)


def _hyp_L2_4(inst):
    a, b = inst["a"], inst["b"]
    return in_comm_r(b, a) or in_comm_l(b, a)


def _hyp_P2_5(inst):
    a, b = inst["a"], inst["b"]
    return ((in_comm_r(b, a) and _comm(a * b, a))
            or in_comm_l(b, a) or in_comm_w(b, a))


def _p2_6_power_degree(a, b):
    chain = power_chain(a)
    for k in range(a.rows + 1):
        if b * chain[k + 1] == chain[k]:
            return k
    return None


def _hyp_P2_6(inst):
    a, b = inst["a"], inst["b"]
    return (_comm(a, a * b) and _comm(a, b * a) and b * a * b == b
            and _p2_6_power_degree(a, b) is not None)


def _hyp_L3_1(inst):
    s, t = inst["s"], inst["t"]
    return _comm(s * t, t) or _comm(t * s, t)


def _hyp_T3_6(inst):
    t, n = inst["t"], inst["n"]
    return is_nilpotent(n) and (
        (in_comm_l(t, n) and _comm(t, n * t))
        or (in_comm_r(t, n) and _comm(t, t * n)))


def _hyp_one_sided_nilpotent(t, q):
    return is_nilpotent(q) and (
        (in_comm_l(t, q) and _comm(t, t * q))
        or (in_comm_r(t, q) and _comm(t, q * t)))


def _hyp_T3_9iii(inst):
    return _hyp_one_sided_nilpotent(inst["t"], inst["q"])


def _hyp_C3_10(inst):
    return _hyp_one_sided_nilpotent(inst["t"], inst["n"])


def _hyp_T3_11ii(inst):
    t, q = inst["t"], inst["q"]
    return (is_semiregular(t) and is_nilpotent(q)
            and _comm(t, t * q) and _comm(t, q * t))


def _hyp_comm_w_pair(inst, second):
    t = inst["t"]
    return in_comm_w(t, inst[second])


HYPOTHESES = {
    TheoremId.P2_2: _hyp_P2_2,
    TheoremId.C2_3: _hyp_P2_2,
    TheoremId.L2_4: _hyp_L2_4,
    TheoremId.P2_5: _hyp_P2_5,
    TheoremId.P2_6: _hyp_P2_6,
    TheoremId.L3_1: _hyp_L3_1,
    TheoremId.C3_2: _hyp_L3_1,
    TheoremId.P3_3: lambda inst: True,
    TheoremId.C3_4: lambda inst: True,
    TheoremId.T3_6: _hyp_T3_6,
    TheoremId.T3_9iii: _hyp_T3_9iii,
    TheoremId.C3_10_smoke: _hyp_C3_10,
    TheoremId.T3_11ii: _hyp_T3_11ii,
    TheoremId.L4_1: lambda inst: _hyp_comm_w_pair(inst, "s"),
    TheoremId.T4_2_smoke: lambda inst: _hyp_comm_w_pair(inst, "f"),
    TheoremId.T4_3_smoke: lambda inst: _hyp_comm_w_pair(inst, "f"),
    TheoremId.Q_probe: _hyp_T3_9iii,
    TheoremId.T4_9_smoke: lambda inst: True,
}

REQUIRED_KEYS = {
    TheoremId.P2_2: ("a", "b"),
    TheoremId.C2_3: ("a", "b"),
    TheoremId.L2_4: ("a", "b"),
    TheoremId.P2_5: ("a", "b"),
    TheoremId.P2_6: ("a", "b"),
    TheoremId.L3_1: ("s", "t"),
    TheoremId.C3_2: ("s", "t"),
    TheoremId.P3_3: ("t",),
    TheoremId.C3_4: ("t",),
    TheoremId.T3_6: ("t", "n"),
    TheoremId.T3_9iii: ("t", "q"),
    TheoremId.C3_10_smoke: ("t", "n"),
    TheoremId.T3_11ii: ("t", "q"),
    TheoremId.L4_1: ("t", "s"),
    TheoremId.T4_2_smoke: ("t", "f"),
    TheoremId.T4_3_smoke: ("t", "f"),
    TheoremId.Q_probe: ("t", "q"),
    TheoremId.T4_9_smoke: ("t",),
}


# --- conclusion checks -----------------------------------------------------
# Each returns a witness dict, empty on success.

def _check_P2_2(inst, seed):
    a, b = inst["a"], inst["b"]
    h_ba = _comm(b * a, a)
    h_ab = _comm(a * b, a)
    h_r = in_comm_r(b, a)
    h_l = in_comm_l(b, a)
    h_w = in_comm_w(b, a)
    bad = {}
    for idx, c in enumerate(pseudo_inverse_family(a)):
        tag = "c{}".format(idx)
        if h_ba and not _comm(b * c, c):
            bad[tag + " (bc)c-c(bc)"] = format_matrix((b * c) * c - c * (b * c))
        if h_r and not in_comm_r(b, c):
            bad[tag + " not in comm_r(b)"] = format_matrix(c)
        if h_ab and not _comm(c * b, c):
            bad[tag + " (cb)c-c(cb)"] = format_matrix((c * b) * c - c * (c * b))
        if h_l and not in_comm_l(b, c):
            bad[tag + " not in comm_l(b)"] = format_matrix(c)
        if h_w and not in_comm_w(b, c):
            bad[tag + " not in comm_w(b)"] = format_matrix(c)
    return bad


def _check_C2_3(inst, seed):
    a, b = inst["a"], inst["b"]
    c = drazin(a).inverse
    bad = {}
    if _comm(b * a, a) and not _comm(b * c, c):
        bad["(b aD)aD - aD(b aD)"] = format_matrix((b * c) * c - c * (b * c))
    if in_comm_r(b, a) and not in_comm_r(b, c):
        bad["aD not in comm_r(b)"] = format_matrix(c)
    if _comm(a * b, a) and not _comm(c * b, c):
        bad["(aD b)aD - aD(aD b)"] = format_matrix((c * b) * c - c * (c * b))
    if in_comm_l(b, a) and not in_comm_l(b, c):
        bad["aD not in comm_l(b)"] = format_matrix(c)
    if in_comm_w(b, a) and not in_comm_w(b, c):
        bad["aD not in comm_w(b)"] = format_matrix(c)
    return bad


def _check_L2_4(inst, seed):
    a, b = inst["a"], inst["b"]
    h_r = in_comm_r(b, a)
    h_l = in_comm_l(b, a)
    bad = {}
    for ci, c in enumerate(pseudo_inverse_family(a, cap=3)):
        for di, d in enumerate(pseudo_inverse_family(b, cap=3)):
            tag = "c{} d{}".format(ci, di)
            products = (("cb", c * b), ("ad", a * d), ("cd", c * d))
            if h_r:
                if not in_comm_r(b, c):
                    bad[tag + " c not in comm_r(b)"] = format_matrix(c)
                for name, p in products:
                    if not _comm(p, b):
                        bad[tag + " " + name + " vs b"] = format_matrix(p * b - b * p)
            if h_l:
                if not in_comm_l(b, c):
                    bad[tag + " c not in comm_l(b)"] = format_matrix(c)
                for name, p in products:
                    if not _comm(p, a):
                        bad[tag + " " + name + " vs a"] = format_matrix(p * a - a * p)
            if h_r and h_l and not in_comm_w(b, c):
                bad[tag + " c not in comm_w(b)"] = format_matrix(c)
    return bad


def _drazin_axioms_hold(x, c):
    if not _comm(x, c) or c * x * c != c:
        return False
    k = drazin_index(x)
    return _matpow(x, k + 1) * c == _matpow(x, k)


def _check_P2_5(inst, seed):
    a, b = inst["a"], inst["b"]
    ad = drazin(a).inverse
    bd = drazin(b).inverse
    ab = a * b
    ab_d = drazin(ab).inverse
    bad = {}
    if in_comm_r(b, a) and _comm(ab, a):
        cand = bd * ad
        if not _drazin_axioms_hold(ab, cand):
            bad["bD aD fails an axiom for ab"] = format_matrix(cand)
        if cand != ab_d:
            bad["(ab)D - bD aD"] = format_matrix(ab_d - cand)
        if cand * ab != (b * a) * (ad * bd):
            bad["(bD aD)(ab) - (ba)(aD bD)"] = format_matrix(
                cand * ab - (b * a) * (ad * bd))
    if in_comm_l(b, a):
        cand = ad * bd
        if not _drazin_axioms_hold(ab, cand):
            bad["aD bD fails an axiom for ab"] = format_matrix(cand)
        if cand != ab_d:
            bad["(ab)D - aD bD"] = format_matrix(ab_d - cand)
    if in_comm_w(b, a):
        cand = ad * bd
        if cand != ab_d:
            bad["(ab)D - aD bD (weak)"] = format_matrix(ab_d - cand)
        if not _comm(ad, bd):
            bad["aD bD - bD aD"] = format_matrix(ad * bd - bd * ad)
    return bad


def _check_P2_6(inst, seed):
    a, b = inst["a"], inst["b"]
    ad = drazin(a).inverse
    bad = {}
    if b != ad:
        bad["b - aD"] = format_matrix(b - ad)
    for key in sorted(inst):
        if not key.startswith("near_"):
            continue
        nb = inst[key]
        hyp = (_comm(a, a * nb) and _comm(a, nb * a) and nb * a * nb == nb
               and _p2_6_power_degree(a, nb) is not None)
        if hyp and nb != ad:
            bad[key + " meets hypotheses but differs from aD"] = format_matrix(nb - ad)
    return bad


def _check_L3_1(inst, seed):
    s, t = inst["s"], inst["t"]
    bad = {}
    if _comm(s * t, t):
        if not is_invariant(s, hyperrange(t)):
            bad["R(T^inf) not s-invariant"] = hyperrange(t).to_text()
        if not is_invariant(s, analytic_core(t)):
            bad["K(T) not s-invariant"] = analytic_core(t).to_text()
    if _comm(t * s, t):
        if not is_invariant(s, hyperkernel(t)):
            bad["N(T^inf) not s-invariant"] = hyperkernel(t).to_text()
        if not is_invariant(s, quasinilpotent_part(t)):
            bad["H0(T) not s-invariant"] = quasinilpotent_part(t).to_text()
    return bad


def _check_C3_2(inst, seed):
    s, t = inst["s"], inst["t"]
    left = _comm(s * t, t)
    right = _comm(t * s, t)
    bad = {}
    for idx, ell in enumerate(pseudo_inverse_family(t, cap=4)):
        tag = "L{}".format(idx)
        if left:
            if not is_invariant(s, hyperrange(ell)):
                bad[tag + " R(L^inf) not s-invariant"] = hyperrange(ell).to_text()
            if not is_invariant(s, analytic_core(ell)):
                bad[tag + " K(L) not s-invariant"] = analytic_core(ell).to_text()
        if right:
            if not is_invariant(s, hyperkernel(ell)):
                bad[tag + " N(L^inf) not s-invariant"] = hyperkernel(ell).to_text()
            if not is_invariant(s, quasinilpotent_part(ell)):
                bad[tag + " H0(L) not s-invariant"] = quasinilpotent_part(ell).to_text()
    return bad


def _check_P3_3(inst, seed):
    t = inst["t"]
    bad = {}
    core = drazin(t)
    if not is_ired_pair(t, core.red_pair):
        bad["core pair not in IRed"] = core.red_pair.m_part.to_text()
    for idx, c in enumerate(pseudo_inverse_family(t)):
        tag = "c{}".format(idx)
        if not is_pseudo_inverse(t, c):
            bad[tag + " not a pseudo inverse"] = format_matrix(c)
            continue
        pair = pair_of_pseudo_inverse(t, c)
        if not is_ired_pair(t, pair):
            bad[tag + " induced pair not in IRed"] = pair.m_part.to_text()
        if phi_map(t, pair) != c:
            bad[tag + " phi round trip"] = format_matrix(phi_map(t, pair) - c)
        if ascent(c) > 1 or ascent(c) != descent(c):
            bad[tag + " pseudo inverse ascent"] = str(ascent(c))
    return bad


def _c3_4_candidate_pairs(t, rng):
    n = t.rows
    core = drazin(t)
    pairs = [core.red_pair,
             RedPair(Subspace.zero(n), Subspace.full(n)),
             RedPair(Subspace.full(n), Subspace.zero(n))]
    full_power = power_chain(t)[n]
    for lam in rational_roots(charpoly(t)):
        shifted = t - RationalMatrix.identity(n).scale(lam)
        shifted_power = power_chain(shifted)[n]
        pairs.append(RedPair(
            subspace_intersect(colspace(full_power), colspace(shifted_power)),
            subspace_sum(nullspace(full_power), nullspace(shifted_power))))
    for _ in range(3):
        probe = RationalMatrix(
            n, n, tuple(Fraction(rng.randint(-2, 2))
                        for _ in range(n * n)))
        pairs.append(RedPair(colspace(probe), nullspace(probe)))
    return pairs


def _check_C3_4(inst, seed):
    t = inst["t"]
    rng = random.Random(derive_seed("c3_4", seed))
    bad = {}
    for idx, pair in enumerate(_c3_4_candidate_pairs(t, rng)):
        strong = is_ired_pair(t, pair)
        weak = is_ired_pair_weak(t, pair, seed=derive_seed("c3_4w", seed, idx))
        if strong != weak:
            bad["pair {} comm-basis {} weak-class {}".format(
                idx, strong, weak)] = pair.m_part.to_text()
    return bad


def _check_T3_6(inst, seed):
    t, n = inst["t"], inst["n"]
    u = t + n
    bad = {}
    if hyperkernel(t) != hyperkernel(u):
        bad["N(T^inf) vs N((T+N)^inf)"] = hyperkernel(u).to_text()
    if hyperrange(t) != hyperrange(u):
        bad["R(T^inf) vs R((T+N)^inf)"] = hyperrange(u).to_text()
    return bad


def _check_T3_9iii(inst, seed):
    t, q = inst["t"], inst["q"]
    bad = {}
    if not spectra_equal(t, t + q):
        bad["spectrum(T)"] = spectrum(t).to_text()
        bad["spectrum(T+Q)"] = spectrum(t + q).to_text()
    return bad


def _check_C3_10(inst, seed):
    t, n = inst["t"], inst["n"]
    u = t + n
    p = charpoly(u)
    bad = {}
    if p.is_zero or not p.eval_matrix(u).is_zero:
        bad["annihilating polynomial failed"] = format_matrix(p.eval_matrix(u))
    return bad


def _check_T3_11ii(inst, seed):
    t, q = inst["t"], inst["q"]
    if not is_semiregular(t + q):
        return {"T+Q kernel escapes hyperrange": nullspace(t + q).to_text()}
    return {}


def _l4_1_quotient(outer: Subspace, clip: Subspace) -> int:
    return outer.dim - subspace_intersect(clip, outer).dim


def _check_L4_1(inst, seed):
    t, s = inst["t"], inst["s"]
    dim = t.rows
    u = t + s
    bad = {}
    if not in_comm_w(u, s.scale(Fraction(-1))):
        bad["-S not in comm_w(T+S)"] = format_matrix(s)
    top = 2 * dim
    t_pow = [RationalMatrix.identity(dim)]
    s_pow = [RationalMatrix.identity(dim)]
    u_pow = [RationalMatrix.identity(dim)]
    for _ in range(top):
        t_pow.append(t_pow[-1] * t)
        s_pow.append(s_pow[-1] * s)
        u_pow.append(u_pow[-1] * u)
    for n in range(3, dim + 1):
        for m in range(1, dim + 1):
            e = n + m - 1
            bound = rank(s_pow[m])
            label = "n={} m={}".format(n, m)
            quotients = (
                ("N(T^n) over clip", nullspace(t_pow[n]), nullspace(u_pow[e])),
                ("N((T+S)^n) over clip", nullspace(u_pow[n]), nullspace(t_pow[e])),
                ("R(T^{n+m-1}) over clip", colspace(t_pow[e]), colspace(u_pow[n])),
                ("R((T+S)^{n+m-1}) over clip", colspace(u_pow[e]), colspace(t_pow[n])),
            )
            for name, outer, clip in quotients:
                q = _l4_1_quotient(outer, clip)
                if q > bound:
                    bad["{} {} = {} > {}".format(label, name, q, bound)] = outer.to_text()
            binom = RationalMatrix.zeros(dim, dim)
            for i in range(e + 1):
                binom = binom + (t_pow[e - i] * s_pow[i]).scale(math.comb(e, i))
            if binom != u_pow[e]:
                bad[label + " binomial expansion"] = format_matrix(binom - u_pow[e])
            a_ker = RationalMatrix.zeros(dim, dim)
            for i in range(n):
                a_ker = a_ker + (s_pow[i] * t_pow[n - i - 1]).scale(math.comb(e, i + m))
            kern = nullspace(t_pow[n]).basis
            if u_pow[e] * kern != s_pow[m] * a_ker * kern:
                bad[label + " kernel factorization"] = format_matrix(
                    u_pow[e] * kern - s_pow[m] * a_ker * kern)
            a_split = RationalMatrix.zeros(dim, dim)
            for i in range(m):
                a_split = a_split + (t_pow[m - 1 - i] * s_pow[i]).scale(math.comb(e, i))
            b_split = RationalMatrix.zeros(dim, dim)
            for i in range(m, e + 1):
                b_split = b_split + (t_pow[e - i] * s_pow[i - m]).scale(math.comb(e, i))
            if u_pow[e] != t_pow[n] * a_split + s_pow[m] * b_split:
                bad[label + " range splitting"] = format_matrix(
                    u_pow[e] - t_pow[n] * a_split - s_pow[m] * b_split)
    return bad


def _check_T4_2(inst, seed):
    t, f = inst["t"], inst["f"]
    u = t + f
    bad = {}
    dim = t.rows
    for name, x in (("T", t), ("T+F", u)):
        if ascent(x) > dim or descent(x) > dim:
            bad[name + " ascent/descent unbounded"] = str(ascent(x))
        rep = degenerate_spectra_report(x)
        if (rep.essential_ascent, rep.essential_descent, rep.essential_degree) != (0, 0, 0):
            bad[name + " essential quantities"] = str(rep)
    # every equivalence (i)-(v) compares two finite quantities, so each
    # biconditional holds as soon as both sides are witnessed finite above
    return bad


def _check_T4_3(inst, seed):
    t, f = inst["t"], inst["f"]
    u = t + f
    bad = {}
    memberships = {}
    reports = {}
    for name, x in (("T", t), ("T+F", u)):
        rep = degenerate_spectra_report(x)
        reports[name] = rep
        p_fin = ascent(x) <= x.rows
        q_fin = descent(x) <= x.rows
        memberships[name] = {
            "upper semi-B-Fredholm": rep.essential_ascent == 0,
            "lower semi-B-Fredholm": rep.essential_descent == 0,
            "B-Fredholm": rep.essential_degree == 0,
            "left Drazin": rep.essential_ascent == 0 and p_fin,
            "right Drazin": rep.essential_descent == 0 and q_fin,
            "Drazin": p_fin and q_fin,
        }
    if reports["T"].empty_spectra != reports["T+F"].empty_spectra:
        bad["B-type spectra differ"] = str(reports["T+F"].empty_spectra)
    for cls, flag in memberships["T"].items():
        if flag != memberships["T+F"][cls]:
            bad[cls + " not preserved"] = "{} vs {}".format(
                flag, memberships["T+F"][cls])
        if not flag:
            bad[cls + " membership lost"] = "expected universal here"
    return bad


def _check_T4_9(inst, seed):
    rep = degenerate_spectra_report(inst["t"])
    bad = {}
    if not rep.drazin_bf_identity:
        bad["sigma_d identity"] = "failed"
    if not rep.browder_essential_identity:
        bad["sigma_b identity"] = "failed"
    return bad


CHECKS = {
    TheoremId.P2_2: _check_P2_2,
    TheoremId.C2_3: _check_C2_3,
    TheoremId.L2_4: _check_L2_4,
    TheoremId.P2_5: _check_P2_5,
    TheoremId.P2_6: _check_P2_6,
    TheoremId.L3_1: _check_L3_1,
    TheoremId.C3_2: _check_C3_2,
    TheoremId.P3_3: _check_P3_3,
    TheoremId.C3_4: _check_C3_4,
    TheoremId.T3_6: _check_T3_6,
    TheoremId.T3_9iii: _check_T3_9iii,
    TheoremId.C3_10_smoke: _check_C3_10,
    TheoremId.T3_11ii: _check_T3_11ii,
    TheoremId.L4_1: _check_L4_1,
    TheoremId.T4_2_smoke: _check_T4_2,
    TheoremId.T4_3_smoke: _check_T4_3,
    TheoremId.Q_probe: _check_T3_9iii,
    TheoremId.T4_9_smoke: _check_T4_9,
}


def _noncommuting(theorem: TheoremId, inst: dict) -> bool:
    keys = PAIR_KEYS[theorem]
    if keys is None:
        return False
    x, y = inst[keys[0]], inst[keys[1]]
    return x * y != y * x


def verify(theorem: TheoremId, instance, seed: int = 0) -> VerificationReport:
    """Run one theorem's hypothesis and conclusion checks on one instance.

    The instance is a mapping from role names to matrices or to matrix text;
    missing roles or unparsable text are rejected.
    """
    if not isinstance(instance, dict):
        raise ValueError("instance must be a mapping of role names to matrices")
    inst = {}
    for name, value in instance.items():
        inst[name] = parse_matrix(value) if isinstance(value, str) else value
    missing = [k for k in REQUIRED_KEYS[theorem] if k not in inst]
    if missing:
        raise ValueError("instance lacks roles: {}".format(", ".join(missing)))
    serialized = serialize_instance(inst)
    noncomm = _noncommuting(theorem, inst)
    if not HYPOTHESES[theorem](inst):
        return VerificationReport(theorem, seed, serialized,
                                  Verdict.HYPOTHESES_UNMET, {}, noncomm)
    witness = CHECKS[theorem](inst, seed)
    verdict = Verdict.FAIL if witness else Verdict.PASS
    return VerificationReport(theorem, seed, serialized, verdict,
                              witness, noncomm)


# --- instance generation -----------------------------------------------------

def _rand_matrix(rng, dim, bound):
    return RationalMatrix(dim, dim, tuple(
        Fraction(rng.randint(-bound, bound)) for _ in range(dim * dim)))


def _rand_unimodular(rng, dim):
    m = RationalMatrix.identity(dim)
    if dim < 2:
        return m
    for _ in range(2 * dim):
        i, j = rng.sample(range(dim), 2)
        c = Fraction(rng.choice((-2, -1, 1, 2)))
        elem = [[Fraction(1) if r == s else Fraction(0) for s in range(dim)]
                for r in range(dim)]
        elem[i][j] = c
        m = m * RationalMatrix.from_rows(elem)
    return m


def _conjugate(rng, m):
    p = _rand_unimodular(rng, m.rows)
    return p * m * inverse(p)


def _rand_nilpotent(rng, dim, bound):
    rows = [[Fraction(rng.randint(-bound, bound)) if j > i else Fraction(0)
             for j in range(dim)] for i in range(dim)]
    return _conjugate(rng, RationalMatrix.from_rows(rows))


def _structured_matrix(rng, dim, bound, force_singular=False):
    style = rng.randrange(2, 4) if force_singular else rng.randrange(4)
    if style == 0:
        return _rand_matrix(rng, dim, bound)
    if style == 1:
        # jordanish: scalar blocks plus strict upper noise, conjugated
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        pos = 0
        while pos < dim:
            size = rng.randint(1, dim - pos)
            lam = rng.randint(-bound, bound)
            for k in range(size):
                rows[pos + k][pos + k] = Fraction(lam)
                if k + 1 < size:
                    rows[pos + k][pos + k + 1] = Fraction(rng.randint(1, bound))
            pos += size
        return _conjugate(rng, RationalMatrix.from_rows(rows))
    if style == 2:
        r = rng.randint(1, max(1, dim - 1))
        left = RationalMatrix(dim, r, tuple(
            Fraction(rng.randint(-bound, bound)) for _ in range(dim * r)))
        right = RationalMatrix(r, dim, tuple(
            Fraction(rng.randint(-bound, bound)) for _ in range(r * dim)))
        return left * right
    # nilpotent block plus (usually invertible) block on the diagonal
    k = rng.randint(1, dim)
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(k):
        for j in range(i + 1, k):
            rows[i][j] = Fraction(rng.randint(-bound, bound))
    for i in range(k, dim):
        for j in range(k, dim):
            rows[i][j] = Fraction(rng.randint(-bound, bound))
        if rows[i][i] == 0:
            rows[i][i] = Fraction(rng.choice((-2, -1, 1, 2)))
    return _conjugate(rng, RationalMatrix.from_rows(rows))


def _pick_witness(rng, witnesses, predicate=None):
    pool = [w for w in witnesses if predicate is None or predicate(w.matrix)]
    if not pool:
        return None
    noncomm = [w for w in pool if not w.commutes]
    if noncomm and rng.random() < 0.7:
        return rng.choice(noncomm)
    return rng.choice(pool)


def _rank_one_nilpotent(rng, t, mirror=False):
    """xy^T with x in N(t), y in N((t^2)^T) and y^T x = 0, or the mirror
    with x in N(t^2), y in N(t^T).  Nilpotent of order 2 and one-sided for t.
    """
    from .exact_linalg import kernel_basis
    t2 = t * t
    xs = kernel_basis(t2 if mirror else t)
    ys = kernel_basis((t if mirror else t2).transpose())
    if xs.cols == 0 or ys.cols == 0:
        return None
    for _ in range(12):
        xv = [Fraction(0)] * t.rows
        yv = [Fraction(0)] * t.rows
        for c in range(xs.cols):
            w = rng.randint(-2, 2)
            for r in range(t.rows):
                xv[r] += w * xs.at(r, c)
        for c in range(ys.cols):
            w = rng.randint(-2, 2)
            for r in range(t.rows):
                yv[r] += w * ys.at(r, c)
        if sum(a * b for a, b in zip(xv, yv)) != 0:
            continue
        n = RationalMatrix(t.rows, t.rows, tuple(
            xv[i] * yv[j] for i in range(t.rows) for j in range(t.rows)))
        if not n.is_zero:
            return n
    return None


def _commuting_nilpotent(rng, t):
    from .exact_linalg import poly_squarefree, RationalPoly
    sqf = poly_squarefree(charpoly(t))
    base = sqf.eval_matrix(t)
    if base.is_zero:
        return None
    coeffs = tuple(Fraction(rng.randint(-2, 2)) for _ in range(t.rows))
    mult = RationalPoly(coeffs) if any(coeffs) else RationalPoly((Fraction(1),))
    n = base * mult.eval_matrix(t)
    return None if n.is_zero else n


def _gen_pseudo_pair(theorem, rng, dim, bound):
    t = _structured_matrix(rng, dim, bound)
    strategy = rng.randrange(5)
    if strategy == 0:
        cls = sample_linear_class(
            dim, [lambda x, a=t: x * a * a - a * x * a],
            seed=rng.randrange(1 << 30))
        pool = [m for m in cls if not m.is_zero]
        b = rng.choice(pool) if pool else None
    elif strategy == 1:
        cls = sample_linear_class(
            dim, [lambda x, a=t: a * x * a - a * a * x],
            seed=rng.randrange(1 << 30))
        pool = [m for m in cls if not m.is_zero]
        b = rng.choice(pool) if pool else None
    elif strategy == 2:
        w = _pick_witness(rng, sample_comm_r(t, seed=rng.randrange(1 << 30)))
        b = w.matrix if w else None
    elif strategy == 3:
        w = _pick_witness(rng, sample_comm_l(t, seed=rng.randrange(1 << 30)))
        b = w.matrix if w else None
    else:
        w = _pick_witness(rng, sample_comm_w(t, seed=rng.randrange(1 << 30)))
        b = w.matrix if w else None
    if b is None:
        return None
    inst = {"a": t, "b": b}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_L2_4(theorem, rng, dim, bound):
    t = _structured_matrix(rng, dim, bound)
    sampler = rng.choice((sample_comm_r, sample_comm_l, sample_comm_w))
    w = _pick_witness(rng, sampler(t, seed=rng.randrange(1 << 30)))
    if w is None:
        return None
    inst = {"a": t, "b": w.matrix}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_P2_5(theorem, rng, dim, bound):
    a = _structured_matrix(rng, dim, bound)
    branch = rng.randrange(3)
    if branch == 0:
        ws = sample_comm_r(a, seed=rng.randrange(1 << 30))
        w = _pick_witness(rng, ws, predicate=lambda b: _comm(a * b, a))
    elif branch == 1:
        w = _pick_witness(rng, sample_comm_l(a, seed=rng.randrange(1 << 30)))
    else:
        w = _pick_witness(rng, sample_comm_w(a, seed=rng.randrange(1 << 30)))
    if w is None:
        return None
    inst = {"a": a, "b": w.matrix}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_P2_6(theorem, rng, dim, bound):
    a = _structured_matrix(rng, dim, bound)
    b = drazin(a).inverse
    i, j = rng.randrange(dim), rng.randrange(dim)
    bump = [[Fraction(1) if (r, c) == (i, j) else Fraction(0)
             for c in range(dim)] for r in range(dim)]
    near_0 = b + RationalMatrix.from_rows(bump)
    near_1 = b.scale(Fraction(2)) if not b.is_zero else RationalMatrix.identity(dim)
    inst = {"a": a, "b": b, "near_0": near_0, "near_1": near_1}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_L3_1(theorem, rng, dim, bound):
    t = _structured_matrix(rng, dim, bound)
    branch = rng.randrange(3)
    if branch == 0:
        cls = sample_linear_class(
            dim, [lambda x, a=t: x * a * a - a * x * a],
            seed=rng.randrange(1 << 30))
        pool = [m for m in cls if not m.is_zero]
        s = rng.choice(pool) if pool else None
    elif branch == 1:
        cls = sample_linear_class(
            dim, [lambda x, a=t: a * a * x - a * x * a],
            seed=rng.randrange(1 << 30))
        pool = [m for m in cls if not m.is_zero]
        s = rng.choice(pool) if pool else None
    else:
        w = _pick_witness(rng, sample_comm_w(t, seed=rng.randrange(1 << 30)))
        s = w.matrix if w else None
    if s is None:
        return None
    inst = {"s": s, "t": t}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_single(theorem, rng, dim, bound):
    t = _structured_matrix(rng, dim, bound,
                           force_singular=rng.random() < 0.6)
    return {"t": t}


def _gen_T3_6(theorem, rng, dim, bound):
    variant = rng.randrange(4)
    if variant == 0:
        t = _structured_matrix(rng, dim, bound)
        n = _commuting_nilpotent(rng, t)
    elif variant in (1, 2):
        t = _structured_matrix(rng, dim, bound, force_singular=True)
        n = _rank_one_nilpotent(rng, t, mirror=(variant == 2))
    else:
        t = _structured_matrix(rng, dim, bound, force_singular=True)
        ws = sample_comm_l(t, seed=rng.randrange(1 << 30))
        w = _pick_witness(rng, ws, predicate=lambda m, a=t: (
            is_nilpotent(m) and _comm(a, m * a)))
        n = w.matrix if w else None
    if n is None:
        return None
    inst = {"t": t, "n": n}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_one_sided_nilpotent(theorem, rng, dim, bound):
    key = REQUIRED_KEYS[theorem][1]
    variant = rng.randrange(4)
    if variant == 0:
        t = _structured_matrix(rng, dim, bound)
        q = _commuting_nilpotent(rng, t)
    elif variant in (1, 2):
        t = _structured_matrix(rng, dim, bound, force_singular=True)
        q = _rank_one_nilpotent(rng, t, mirror=(variant == 2))
    else:
        t = _structured_matrix(rng, dim, bound, force_singular=True)
        sampler = rng.choice((sample_comm_l, sample_comm_r))
        ws = sampler(t, seed=rng.randrange(1 << 30))
        w = _pick_witness(rng, ws, predicate=is_nilpotent)
        q = w.matrix if w else None
    if q is None:
        return None
    inst = {"t": t, key: q}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_T3_11ii(theorem, rng, dim, bound):
    from .exact_linalg import RationalPoly
    k = rng.randint(1, dim)
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    lam = rng.choice((-2, -1, 1, 2))
    strict = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        rows[i][i] = Fraction(lam)
        for j in range(i + 1, k):
            c = Fraction(rng.randint(-bound, bound))
            rows[i][j] = c
            strict[i][j] = c
    for _ in range(20):
        block = [[Fraction(rng.randint(-bound, bound))
                  for _ in range(dim - k)] for _ in range(dim - k)]
        cand = RationalMatrix.from_rows(block) if dim > k else None
        if cand is None or rank(cand) == dim - k:
            break
    else:
        return None
    for i in range(k, dim):
        for j in range(k, dim):
            rows[i][j] = block[i - k][j - k]
    t = RationalMatrix.from_rows(rows)
    coeffs = (Fraction(0),) + tuple(
        Fraction(rng.randint(-2, 2)) for _ in range(max(1, k - 1)))
    strict_m = RationalMatrix.from_rows(strict)
    q_block = RationalPoly(coeffs).eval_matrix(strict_m) if k > 1 else \
        RationalMatrix.zeros(k, k)
    q_rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(k):
        for j in range(k):
            q_rows[i][j] = q_block.at(i, j)
    q = RationalMatrix.from_rows(q_rows)
    p = _rand_unimodular(rng, dim)
    p_inv = inverse(p)
    inst = {"t": p * t * p_inv, "q": p * q * p_inv}
    return inst if HYPOTHESES[theorem](inst) else None


def _gen_comm_w_pair(theorem, rng, dim, bound):
    # an invertible base has comm_w equal to the commutant, so lean singular
    key = REQUIRED_KEYS[theorem][1]
    if rng.random() < 0.5:
        t = _structured_matrix(rng, dim, bound, force_singular=True)
        s = _rank_one_nilpotent(rng, t, mirror=rng.random() < 0.5)
    else:
        t = _structured_matrix(rng, dim, bound,
                               force_singular=rng.random() < 0.7)
        w = _pick_witness(rng, sample_comm_w(t, seed=rng.randrange(1 << 30)))
        s = w.matrix if w else None
    if s is None or s.is_zero:
        return None
    inst = {"t": t, key: s}
    return inst if HYPOTHESES[theorem](inst) else None


GENERATORS = {
    TheoremId.P2_2: _gen_pseudo_pair,
    TheoremId.C2_3: _gen_pseudo_pair,
    TheoremId.L2_4: _gen_L2_4,
    TheoremId.P2_5: _gen_P2_5,
    TheoremId.P2_6: _gen_P2_6,
    TheoremId.L3_1: _gen_L3_1,
    TheoremId.C3_2: _gen_L3_1,
    TheoremId.P3_3: _gen_single,
    TheoremId.C3_4: _gen_single,
    TheoremId.T3_6: _gen_T3_6,
    TheoremId.T3_9iii: _gen_one_sided_nilpotent,
    TheoremId.C3_10_smoke: _gen_one_sided_nilpotent,
    TheoremId.T3_11ii: _gen_T3_11ii,
    TheoremId.L4_1: _gen_comm_w_pair,
    TheoremId.T4_2_smoke: _gen_comm_w_pair,
    TheoremId.T4_3_smoke: _gen_comm_w_pair,
    TheoremId.Q_probe: _gen_one_sided_nilpotent,
    TheoremId.T4_9_smoke: _gen_single,
}


def generate_instance(theorem: TheoremId, dim: int, seed: int,
                      entry_bound: int = 3) -> dict:
    """Deterministically build an instance meeting the theorem's hypotheses.

    Raises GenerationStarved when the recipe budget runs out, which the
    campaign records as a starved trial rather than a pass or failure.
    """
    if dim < MIN_DIM.get(theorem, 1):
        raise GenerationStarved(
            "{} carries no content below dimension {}".format(
                theorem.value, MIN_DIM[theorem]))
    rng = random.Random(derive_seed("gen", theorem.value, dim, seed,
                                    entry_bound))
    gen = GENERATORS[theorem]
    for _ in range(30):
        inst = gen(theorem, rng, dim, entry_bound)
        if inst is not None:
            return inst
    raise GenerationStarved(
        "no {} instance found at dim {} seed {}".format(
            theorem.value, dim, seed))


def near_miss_instances(count: int = 5, seed: int = 0) -> tuple:
    """Nilpotent perturbations violating every one-sided condition whose
    spectra really move: the corpus behind the probe's negative half.
    """
    rng = random.Random(derive_seed("nearmiss", seed))
    out = []
    guard = 0
    while len(out) < count and guard < 40 * count:
        guard += 1
        pad = rng.randrange(3)
        scale = rng.choice((1, 2, 4))
        dim = 2 + pad
        rows_t = [[Fraction(0)] * dim for _ in range(dim)]
        rows_q = [[Fraction(0)] * dim for _ in range(dim)]
        rows_t[0][1] = Fraction(1)
        rows_q[1][0] = Fraction(scale)
        for k in range(2, dim):
            rows_t[k][k] = Fraction(rng.choice((-2, -1, 1, 2, 3)))
        p = _rand_unimodular(rng, dim)
        p_inv = inverse(p)
        t = p * RationalMatrix.from_rows(rows_t) * p_inv
        q = p * RationalMatrix.from_rows(rows_q) * p_inv
        if not is_nilpotent(q) or spectra_equal(t, t + q):
            continue
        if _hyp_one_sided_nilpotent(t, q):
            continue
        out.append({"t": t, "q": q})
    if len(out) < count:
        raise GenerationStarved("near-miss corpus underfilled")
    return tuple(out)


# --- fixtures ----------------------------------------------------------------

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_instances(theorem: TheoremId) -> tuple:
    """Curated instances shipped with the package, keyed by theorem id."""
    out = []
    prefix = theorem.value.lower() + "_"
    if not FIXTURE_DIR.is_dir():
        return ()
    for path in sorted(FIXTURE_DIR.glob(prefix + "*.txt")):
        blocks = [b for b in path.read_text().split("\n\n") if b.strip()]
        matrices = [parse_matrix(b) for b in blocks
                    if not b.lstrip().startswith("profile:")]
        keys = REQUIRED_KEYS[theorem]
        if len(matrices) != len(keys):
            raise ValueError("fixture {} has {} matrices, needs {}".format(
                path.name, len(matrices), len(keys)))
        out.append(dict(zip(keys, matrices)))
    return tuple(out)


# --- shrinking ---------------------------------------------------------------

def _drop_last(m: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(m.rows - 1, m.cols - 1, tuple(
        m.at(i, j) for i in range(m.rows - 1) for j in range(m.cols - 1)))


def shrink_instance(theorem: TheoremId, instance: dict, seed: int,
                    budget: int = 150) -> dict:
    """Greedy exact shrink of a failing instance: drop the last coordinate
    while the failure survives, then push entries toward zero.
    """
    calls = 0

    def still_fails(cand):
        nonlocal calls
        if calls >= budget:
            return False
        calls += 1
        try:
            return verify(theorem, cand, seed).verdict is Verdict.FAIL
        except Exception:
            return False

    current = dict(instance)
    changed = True
    while changed and calls < budget:
        changed = False
        dims = {m.rows for m in current.values()}
        if len(dims) == 1 and next(iter(dims)) > 1:
            cand = {k: _drop_last(m) for k, m in current.items()}
            if still_fails(cand):
                current = cand
                changed = True
                continue
        for key in sorted(current):
            m = current[key]
            for idx in range(len(m.entries)):
                e = m.entries[idx]
                if e == 0:
                    continue
                for new_e in (Fraction(0), e / 2):
                    if new_e == e:
                        continue
                    entries = list(m.entries)
                    entries[idx] = new_e
                    cand = dict(current)
                    cand[key] = RationalMatrix(m.rows, m.cols, tuple(entries))
                    if still_fails(cand):
                        current = cand
                        m = cand[key]
                        changed = True
                        break
    return current


# --- campaigns ---------------------------------------------------------------

@dataclass(frozen=True)
class CampaignConfig:
    dimensions: tuple = (2, 3, 4, 5, 6)
    trials_per_theorem: int = 4
    seed: int = 0
    entry_bound: int = 3
    min_noncommuting: int = 0

    def __post_init__(self):
        if not self.dimensions or any(
                not isinstance(d, int) or d < 1 for d in self.dimensions):
            raise ValueError("dimensions must be positive integers")
        if self.trials_per_theorem < 0 or self.entry_bound < 1:
            raise ValueError("trial count and entry bound must be sensible")
        if self.min_noncommuting < 0:
            raise ValueError("min_noncommuting must be nonnegative")
        total = self.trials_per_theorem * len(self.dimensions)
        if self.min_noncommuting > total:
            raise ValueError(
                "cannot require {} non-commuting instances out of {} trials"
                .format(self.min_noncommuting, total))

    def to_json_dict(self) -> dict:
        return {
            "dimensions": list(self.dimensions),
            "trials_per_theorem": self.trials_per_theorem,
            "seed": self.seed,
            "entry_bound": self.entry_bound,
            "min_noncommuting": self.min_noncommuting,
        }


@dataclass(frozen=True)
class CampaignResult:
    config: CampaignConfig
    reports: tuple
    summary: dict

    @property
    def any_failed(self) -> bool:
        return any(r.verdict is Verdict.FAIL for r in self.reports)

    def to_json(self) -> str:
        doc = {
            "config": self.config.to_json_dict(),
            "summary": self.summary,
            "reports": [r.to_json_dict() for r in self.reports],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _run_batch(task):
    theorem_value, dim, trials, seed, entry_bound = task
    theorem = TheoremId(theorem_value)
    reports = []
    for i in range(trials):
        trial_seed = derive_seed("trial", theorem_value, dim, seed, i)
        try:
            inst = generate_instance(theorem, dim, trial_seed, entry_bound)
        except GenerationStarved as exc:
            reports.append(VerificationReport(
                theorem, trial_seed, {}, Verdict.STARVED,
                {"reason": str(exc)}, False))
            continue
        rep = verify(theorem, inst, trial_seed)
        reports.append(rep)
        if rep.verdict is Verdict.FAIL:
            break
    return reports


def run_campaign(config: CampaignConfig, theorems=None) -> CampaignResult:
    """Verify every requested theorem across the configured dimensions.

    Deterministic for a fixed config including across worker counts; aborts
    at the first failing batch after shrinking the failing instance.
    """
    chosen = tuple(theorems) if theorems else tuple(TheoremId)
    batches = [(tid, dim) for tid in chosen for dim in config.dimensions
               if dim >= MIN_DIM.get(tid, 1)]
    tasks = [(tid.value, dim, config.trials_per_theorem, config.seed,
              config.entry_bound) for tid, dim in batches]
    workers = int(os.environ.get("WEAKCOMM_WORKERS", "1") or 1)
    reports = []
    failure = None
    if workers > 1 and tasks:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_batch, tasks))
        for batch in results:
            reports.extend(batch)
            fails = [r for r in batch if r.verdict is Verdict.FAIL]
            if fails:
                failure = fails[0]
                break
    else:
        for task in tasks:
            batch = _run_batch(task)
            reports.extend(batch)
            fails = [r for r in batch if r.verdict is Verdict.FAIL]
            if fails:
                failure = fails[0]
                break
    summary = {"theorems": {}, "aborted": failure is not None}
    if failure is not None:
        shrunk = shrink_instance(failure.theorem,
                                 parse_instance(failure.instance),
                                 failure.seed)
        summary["first_failure"] = {
            "theorem": failure.theorem.value,
            "seed": failure.seed,
            "shrunk_instance": serialize_instance(shrunk),
        }
    elif config.min_noncommuting > 0:
        for tid in chosen:
            if tid not in QUOTA_APPLICABLE:
                continue
            have = sum(1 for r in reports
                       if r.theorem is tid and r.noncommuting
                       and r.verdict is Verdict.PASS)
            idx = 0
            fixtures = fixture_instances(tid)
            while have < config.min_noncommuting and idx < len(fixtures):
                rep = verify(tid, fixtures[idx],
                             derive_seed("fixture", tid.value, idx))
                if rep.verdict is Verdict.FAIL:
                    failure = rep
                    summary["aborted"] = True
                    break
                if rep.noncommuting and rep.verdict is Verdict.PASS:
                    reports.append(rep)
                    have += 1
                idx += 1
            if failure is not None:
                break
    for tid in chosen:
        mine = [r for r in reports if r.theorem is tid]
        counts = {v.value: sum(1 for r in mine if r.verdict is v)
                  for v in Verdict}
        counts["noncommuting"] = sum(
            1 for r in mine if r.noncommuting and r.verdict is Verdict.PASS)
        counts["quota_applicable"] = tid in QUOTA_APPLICABLE
        counts["quota_met"] = (tid not in QUOTA_APPLICABLE
                               or counts["noncommuting"] >= config.min_noncommuting)
        summary["theorems"][tid.value] = counts
    return CampaignResult(config, tuple(reports), summary)


def write_report(result: CampaignResult, path) -> None:
    Path(path).write_text(result.to_json())


def question_probe(config: CampaignConfig) -> dict:
    """Search for a counterexample to the nilpotent one-sided question and
    log near misses where dropping the side condition moves the spectrum.
    """
    result = run_campaign(config, theorems=(TheoremId.Q_probe,))
    counterexamples = [r for r in result.reports
                       if r.verdict is Verdict.FAIL]
    near = near_miss_instances(max(5, config.trials_per_theorem), config.seed)
    witnesses = []
    for idx, inst in enumerate(near):
        rep = verify(TheoremId.Q_probe, inst,
                     derive_seed("near", config.seed, idx))
        moved = not spectra_equal(inst["t"], inst["t"] + inst["q"])
        witnesses.append({
            "instance": serialize_instance(inst),
            "verdict": rep.verdict.value,
            "spectrum_before": spectrum(inst["t"]).to_text(),
            "spectrum_after": spectrum(inst["t"] + inst["q"]).to_text(),
            "spectra_changed": moved,
        })
    return {
        "trials": len(result.reports),
        "pass": sum(1 for r in result.reports if r.verdict is Verdict.PASS),
        "counterexamples": len(counterexamples),
        "near_miss_total": len(witnesses),
        "near_miss_spectra_changed": sum(
            1 for w in witnesses if w["spectra_changed"]),
        "near_miss_witnesses": witnesses,
    }
