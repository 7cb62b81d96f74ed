"""The acceptance suite: ten exact checks, each returning pass/fail with details.

Random samples are drawn from ``random.Random(seed)`` where ``seed`` comes
from ``ROOTDATUM_SEED`` (default 0).  Reports contain no timings so that two
runs are byte-identical; timings are returned separately.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import algebraicity as alg
from . import cgroup as cg
from . import datum as dt
from . import satake as st
from . import unitary as un
from .errors import RelationViolation, RootDatumError
from .fields import CoefficientField
from .jsonio import SCHEMA_VERSION, dumps
from .lattice import dot, is_integral

CRITERION_LIMITS = {1: 5.0, 2: 1.0, 3: 1.0, 4: 1.0, 5: 1.0, 6: 5.0, 7: 1.0, 8: 5.0, 9: 1.0,
                    10: 10.0}


def seed_from_env() -> int:
    return int(os.environ.get("ROOTDATUM_SEED", "0"))


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: Dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"id": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail}


def _catalog(max_rank: Optional[int] = None) -> List[Tuple[str, int]]:
    entries = [("GL", n) for n in range(1, 5)] + [("SL", n) for n in range(2, 5)]
    entries += [("PGL", n) for n in range(2, 5)] + [("Torus", n) for n in range(1, 4)]
    entries += [("Sp", 2)] + [("UnitaryQuasiSplit", n) for n in range(1, 5)]
    if max_rank is not None:
        entries = [(nm, n) for nm, n in entries if dt.standard(nm, n)[0].rank <= max_rank]
    return entries


def _label(nm: str, n: int) -> str:
    return f"{nm}({n})"


# ---------------------------------------------------------------------------


def criterion_1(seed: int) -> CriterionResult:
    failures = []
    for nm, n in _catalog():
        rd, g = dt.standard(nm, n)
        if not cg.c_group_agreement(rd, g).agree:
            failures.append(_label(nm, n))
    named = {}
    gl = lambda n: dt.standard("GL", n)[0]
    q = lambda nm, n: cg.c_group_via_quotient(*dt.standard(nm, n)).dual_datum
    named["C(PGL2)=GL2"] = dt.based_isomorphism(q("PGL", 2), gl(2)) is not None
    for n in range(1, 5):
        prod = dt.direct_product(gl(n), gl(1))[0]
        named[f"C(GL{n})=GL{n}xGL1"] = dt.based_isomorphism(q("GL", n), prod) is not None
    sl3 = dt.standard("SL", 3)[0]
    named["C(PGL3)=SL3xGL1"] = dt.based_isomorphism(
        q("PGL", 3), dt.direct_product(sl3, gl(1))[0]) is not None
    # negative control: the search must be able to say no
    named["C(PGL2)!=SL2xGL1"] = dt.based_isomorphism(
        q("PGL", 2), dt.direct_product(dt.standard("SL", 2)[0], gl(1))[0]) is None
    passed = not failures and all(named.values())
    return CriterionResult(1, "C-group identities", passed,
                           {"disagreements": failures, "named": named,
                            "groups": len(_catalog())})


def criterion_2(seed: int) -> CriterionResult:
    checks = {}
    pgl2, g = dt.standard("PGL", 2)
    checks["PGL2 has no twisting element"] = not cg.enumerate_twisting_elements(pgl2, 5).existence
    for n in range(2, 5):
        rd, g = dt.standard("SL", n)
        delta = dt.half_sum_positive_roots(rd)
        checks[f"SL{n} delta twisting"] = (
            cg.enumerate_twisting_elements(rd, 1, g).existence and is_integral(delta)
            and cg.is_twisting_element(rd, tuple(int(x) for x in delta), g))
    for n in range(1, 5):
        rd, g = dt.standard("GL", n)
        theta = tuple(range(n - 1, -1, -1))
        checks[f"GL{n} (n-1,...,0) twisting"] = (
            cg.enumerate_twisting_elements(rd, 1, g).existence
            and cg.is_twisting_element(rd, theta, g))
    for nm in ("GL", "SL"):
        rd, g = dt.standard(nm, 2)
        pkg = cg.build_g_tilde(rd, g)
        sp = cg.splittings(pkg, 3)
        back = all(cg.splitting_from_twisting(pkg, t) == chi
                   for chi, t in zip(sp.characters, sp.twisting_elements))
        checks[f"{nm}2 splitting bijection"] = (
            len(sp.characters) == len(set(sp.twisting_elements)) > 0 and back)
    return CriterionResult(2, "twisting elements", all(checks.values()), checks)


def criterion_3(seed: int) -> CriterionResult:
    checks = {}
    for n in range(1, 7):
        rd, _ = dt.standard("GL", n)
        expected = tuple((n - 1 - 2 * i) % 2 for i in range(n))
        try:
            checks[f"GL{n} e class"] = cg.element_e(rd) == expected
        except RootDatumError:
            checks[f"GL{n} e class"] = False
    entries = _catalog() + [("GL", 5), ("GL", 6), ("Sp", 3)]
    for nm, n in entries:
        rd, _ = dt.standard(nm, n)
        delta = dt.half_sum_positive_roots(rd)
        report = cg.e_class_report(rd)
        pairing = all(dot(delta, c) == 1 for c in rd.simple_coroots)
        checks[f"{_label(nm, n)} delta pairing"] = pairing
        checks[f"{_label(nm, n)} central and invariant"] = all(report.values())
    return CriterionResult(3, "e element", all(checks.values()),
                           {k: v for k, v in checks.items() if not v} or {"all": True})


def _expected_flags(kind: str, s: Fraction) -> Dict[str, bool]:
    integer = s.denominator == 1
    l_side = (not integer) if kind == st.HOLOMORPHIC else integer
    return {"L_algebraic": l_side, "L_arithmetic": l_side,
            "C_algebraic": not l_side, "C_arithmetic": not l_side}


def criterion_4(seed: int) -> CriterionResult:
    total, bad = 0, []
    hecke = ((2, Fraction(-24)), (3, Fraction(252)), (5, Fraction(0)))
    for kind in st.KINDS:
        for k in range(2, 13):
            if kind == st.MAASS and k > 2:
                continue  # Maass forms have no weight; one pass per s
            for s2 in range(-4, 5):
                s = Fraction(s2, 2)
                spec = st.GL2FamilySpec(kind, s, k if kind == st.HOLOMORPHIC else None, hecke)
                total += 1
                try:
                    out = st.classify_gl2_family(spec)
                except RootDatumError as exc:
                    bad.append(f"{kind} k={k} s={s}: {exc}")
                    continue
                flags = {key: out[key] for key in st.FLAG_KEYS}
                if flags != _expected_flags(kind, s) or not out["checks"]["lambda"]:
                    bad.append(f"{kind} k={k} s={s}")
    return CriterionResult(4, "GL2 truth table", not bad, {"cases": total, "mismatches": bad})


def criterion_5(seed: int) -> CriterionResult:
    checks = {}
    S = st.SqrtPScalar
    for p in (2, 3, 5, 7):
        triv = st.trivial_rep_gl2(p)
        checks[f"trace p={p}"] = triv.trace == S(p, p + 1, -1)
        checks[f"not over Q p={p}"] = not st.integral_exponent_test([triv.trace])
    p = 5
    half_det = st.unramified_twist(st.trivial_rep_gl2(p), (1, 1), Fraction(1, 2), p)
    arith = st.arithmetic_frobenius(half_det)
    target = st.SatakeParamGL.from_eigenvalues([S(p, 1), S(p, p)])
    checks["|det|^1/2 charpoly (X-1)(X-p)"] = arith == target
    res = st.defined_over_equivalence_gln(arith)
    checks["companion witness"] = res.coeffs_in_field and res.companion == (
        (Fraction(0), Fraction(-p)), (Fraction(1), Fraction(1 + p)))
    commute = True
    for k in range(2, 13):
        for s2 in range(-4, 5):
            spec = st.GL2FamilySpec(st.HOLOMORPHIC, Fraction(s2, 2), k, ((3, Fraction(5)),))
            for t2 in range(-4, 5):
                t = Fraction(t2, 2)
                lhs = st.unramified_twist(st.satake_charpoly_gl2(spec, 3), (1, 1), t, 3)
                shifted = st.GL2FamilySpec(st.HOLOMORPHIC, spec.s + t, k, spec.hecke)
                if lhs != st.satake_charpoly_gl2(shifted, 3):
                    commute = False
    checks["twist/charpoly commutation"] = commute
    return CriterionResult(5, "Satake examples", all(checks.values()), checks)


def _random_half_integral(rng: random.Random, n: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-8, 8), 2) for _ in range(n))


def criterion_6(seed: int) -> CriterionResult:
    rng = random.Random(seed)
    bad = []
    samples = 0
    for nm, n in _catalog(max_rank=3) + [("Sp", 3)]:
        rd, g = dt.standard(nm, n)
        weyl = dt.weyl_group(rd)
        tw = cg.enumerate_twisting_elements(rd, 3, g)
        theta = tw.elements[0] if tw.elements else None
        for _ in range(200):
            lam = _random_half_integral(rng, rd.rank)
            lam_tau = tuple(x + rng.randint(-2, 2) for x in lam)
            p = alg.InfinitesimalParameter(lam, lam_tau)
            samples += 1
            l0, c0 = alg.is_l_algebraic(p, rd), alg.is_c_algebraic(p, rd)
            if (alg.is_l_algebraic(p.swapped(), rd), alg.is_c_algebraic(p.swapped(), rd)) != (l0, c0):
                bad.append(f"{_label(nm, n)} sigma/tau {lam}")
            for w in weyl:
                q = p.act(w)
                if alg.is_l_algebraic(q, rd) != l0 or alg.is_c_algebraic(q, rd) != c0:
                    bad.append(f"{_label(nm, n)} Weyl {lam}")
                    break
            if theta is not None:
                twisted = alg.twist_by_theta(p, rd, theta, g)
                if alg.is_l_algebraic(twisted, rd) != c0:
                    bad.append(f"{_label(nm, n)} twist {lam}")
    return CriterionResult(6, "Weyl and sigma/tau invariance", not bad,
                           {"samples": samples, "failures": bad[:10]})


def _random_dominant(rng: random.Random, rd: dt.BasedRootDatum) -> Tuple[int, ...]:
    while True:
        mu = tuple(rng.randint(-6, 6) for _ in range(rd.rank))
        if all(dot(mu, c) >= 0 for c in rd.simple_coroots):
            return mu


def criterion_7(seed: int) -> CriterionResult:
    rng = random.Random(seed + 7)
    bad = []
    for nm, n in (("GL", 2), ("GL", 3), ("SL", 2), ("Sp", 2)):
        rd, _ = dt.standard(nm, n)
        for _ in range(100):
            mu = _random_dominant(rng, rd)
            if not alg.is_c_algebraic(alg.infchar_of_algebraic_rep(mu, rd), rd):
                bad.append(f"{_label(nm, n)} {mu}")
    return CriterionResult(7, "cohomological implies C-algebraic", not bad,
                           {"samples": 400, "failures": bad})


UNITARY_PRIME = 109  # 108 is divisible by 2(n-1) for n = 2, 3, 4


def criterion_8(seed: int) -> CriterionResult:
    rng = random.Random(seed + 8)
    checks = {}
    checks["Phi identities n<=8"] = all(un.phi_identities_hold(n) for n in range(1, 9))
    for n, p in ((2, 101), (3, 13), (4, 13), (5, 41)):
        checks[f"|ker j| n={n} p={p}"] = len(un.kernel_of_j(n, CoefficientField.prime(p))) == n - 1
    f = CoefficientField.prime(UNITARY_PRIME)
    for n in (2, 3, 4):
        hom = trip = mult = True
        for _ in range(100):
            a = un.random_element(un.CGroupUnitaryElement, f, n, rng)
            b = un.random_element(un.CGroupUnitaryElement, f, n, rng)
            hom &= un.j_map(un.multiply(a, b)) == un.multiply(un.j_map(a), un.j_map(b))
            trip &= un.round_trip(a) == a
            if a.gamma == 0:
                mult &= un.multiplier(un.j_map(a)) == f.pow(un.d(a), 1 - n)
        checks[f"j homomorphism n={n}"] = hom
        checks[f"j' o (j x d) = id n={n}"] = trip
        checks[f"multiplier = d^(1-n) n={n}"] = mult
    g = CoefficientField.gaussian()
    checks["multiplier j(1 x c)"] = all(
        un.multiplier(un.j_of_c(g, n)) == g.elt((-1) ** (n - 1)) for n in range(1, 9))
    return CriterionResult(8, "unitary comparison", all(checks.values()), checks)


def criterion_9(seed: int) -> CriterionResult:
    rng = random.Random(seed + 9)
    checks = {}

    def ok(ce):
        r = alg.conjugation_element(ce)
        return r.order_divides_two and r.swap_invariant and r.sign_invariant

    CE = alg.ConjugationElement.from_weights
    checks["GL1 trivial"] = ok(CE((0,), (0,), ((1,),)))
    checks["GL2 equal weights"] = ok(CE((1, 0), (1, 0), ((1, 0), (0, -1))))
    checks["GL2 swapped weights"] = ok(CE((1, 0), (0, 1), ((0, 1), (-1, 0))))
    checks["GL2 swap sigma/tau"] = (
        alg.conjugation_element(CE((1, 0), (0, 1), ((0, 1), (-1, 0)))).alpha
        == alg.conjugation_element(CE((0, 1), (1, 0), ((0, 1), (-1, 0)))).alpha)
    try:
        alg.conjugation_element(CE((1, 0), (1, 0), ((0, 1), (1, 0))))
        checks["inconsistent fixture rejected"] = False
    except RelationViolation:
        checks["inconsistent fixture rejected"] = True
    checks["50 random fixtures"] = all(
        ok(alg.random_conjugation_fixture(rng, rng.randint(1, 4))) for _ in range(50))
    return CriterionResult(9, "alpha_infinity order", all(checks.values()), checks)


def _round_trips() -> Dict[str, bool]:
    out = {}
    good = True
    for nm, n in _catalog() + [("Sp", 3)]:
        rd, g = dt.standard(nm, n)
        text = dumps(dt.datum_to_json(rd, g))
        rd2, g2 = dt.datum_from_json(json.loads(text))
        good &= rd2 == rd and g2 == g and rd2.name == rd.name
        good &= dumps(dt.datum_to_json(rd2, g2)) == text
    out["datum"] = good
    good = True
    for nm, n in (("PGL", 2), ("GL", 3), ("UnitaryQuasiSplit", 3), ("Torus", 1)):
        pkg = cg.build_g_tilde(*dt.standard(nm, n))
        text = dumps(cg.package_to_json(pkg))
        pkg2 = cg.package_from_json(json.loads(text))
        good &= pkg2 == pkg and dumps(cg.package_to_json(pkg2)) == text
    out["extension package"] = good
    p = alg.InfinitesimalParameter((Fraction(3, 2), Fraction(-1, 2)), (Fraction(1, 2), Fraction(1, 2)),
                                   "complex")
    out["parameter"] = alg.InfinitesimalParameter.from_json(json.loads(dumps(p.to_json()))) == p
    spec = st.GL2FamilySpec(st.HOLOMORPHIC, Fraction(1, 2), 12, ((2, -24), (3, 252)))
    out["family spec"] = st.GL2FamilySpec.from_json(json.loads(dumps(spec.to_json()))) == spec
    x = st.SqrtPScalar(7, Fraction(-3, 5), -3)
    out["sqrt-p scalar"] = st.SqrtPScalar.from_json(json.loads(dumps(x.to_json()))) == x
    from .cli import describe_payload, parse_describe_payload
    good = True
    for nm, n in _catalog():
        payload = json.loads(dumps(describe_payload(*dt.standard(nm, n))))
        good &= parse_describe_payload(payload) == dt.standard(nm, n)
    out["describe output"] = good
    return out


CRITERIA: Dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def run_criterion(number: int, seed: int) -> CriterionResult:
    start = time.perf_counter()
    if number == 10:
        res = criterion_10(seed)
    else:
        try:
            res = CRITERIA[number](seed)
        except RootDatumError as exc:
            res = CriterionResult(number, f"criterion {number}", False,
                                  {"error": exc.code, "message": str(exc)})
    res.seconds = time.perf_counter() - start
    if res.seconds > CRITERION_LIMITS[number]:
        res.passed = False
        res.detail = {**res.detail, "over_time_limit": True}
    return res


def _report(results: List[CriterionResult], seed: int) -> dict:
    return {"schema": f"{SCHEMA_VERSION}/verify-all", "seed": seed,
            "criteria": [r.to_json() for r in results],
            "all_passed": all(r.passed for r in results)}


def criterion_10(seed: int) -> CriterionResult:
    """Two runs of criteria 1-9 give byte-identical reports; JSON round-trips are exact."""
    texts = []
    for _ in range(2):
        results = [run_criterion(i, seed) for i in range(1, 10)]
        texts.append(dumps(_report(results, seed)))
    trips = _round_trips()
    detail = {"identical_reports": texts[0] == texts[1], "round_trips": trips}
    return CriterionResult(10, "determinism and round-trip",
                           texts[0] == texts[1] and all(trips.values()), detail)


def run_all(seed: Optional[int] = None, numbers=None) -> Tuple[dict, List[CriterionResult]]:
    seed = seed_from_env() if seed is None else seed
    numbers = numbers or list(range(1, 11))
    results = [run_criterion(i, seed) for i in numbers]
    return _report(results, seed), results
