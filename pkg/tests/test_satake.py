from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rootdatum import satake as sk
from rootdatum.errors import InvalidArgument, ParityMismatch, UnknownPrime
from rootdatum.satake import SqrtPScalar

half = Fraction(1, 2)
PRIMES = (2, 3, 5, 7, 11)


def scalars(p):
    return st.builds(lambda c, e: SqrtPScalar(p, c, e),
                     st.fractions(min_value=-50, max_value=50, max_denominator=30),
                     st.integers(-8, 8))


def as_sympy(x: SqrtPScalar):
    return sympy.Rational(x.coeff.numerator, x.coeff.denominator) * sympy.sqrt(x.prime) ** x.halfexp


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(scalars(p), scalars(p))))
def test_scalar_arithmetic_matches_sympy(pair):
    a, b = pair
    assert sympy.simplify(as_sympy(a * b) - as_sympy(a) * as_sympy(b)) == 0
    if (a.halfexp - b.halfexp) % 2 == 0 or a.is_zero() or b.is_zero():
        assert sympy.simplify(as_sympy(a + b) - as_sympy(a) - as_sympy(b)) == 0
    else:
        with pytest.raises(ParityMismatch):
            a + b
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(scalars))
def test_scalar_canonical_form_and_json(x):
    if not x.is_zero():
        assert x.coeff.numerator % x.prime and x.coeff.denominator % x.prime
    assert SqrtPScalar.from_json(x.to_json()) == x
    assert x.arithmetic_frobenius().arithmetic_frobenius() == x


def test_scalar_examples():
    assert SqrtPScalar(2, 4, 1) == SqrtPScalar.power(2, Fraction(5, 2))
    assert SqrtPScalar.power(3, 1).to_fraction() == 3
    with pytest.raises(ParityMismatch):
        SqrtPScalar.power(3, half).to_fraction()
    with pytest.raises(InvalidArgument):
        SqrtPScalar.power(3, Fraction(1, 3))


def test_trivial_rep_trace_is_irrational():
    for p in (2, 3, 5, 7):
        t = sk.trivial_rep_gl2(p).trace
        assert t == SqrtPScalar(p, p + 1, -1)
        assert not sk.defined_over_equivalence_gln(sk.trivial_rep_gl2(p)).coeffs_in_field


def test_half_det_twist_is_rational():
    # twisting by |det|^(1/2) gives eigenvalues 1 and 1/p; arithmetic Frobenius gives 1 and p
    p = 5
    twisted = sk.unramified_twist(sk.trivial_rep_gl2(p), (1, 1), half, p)
    res = sk.defined_over_equivalence_gln(twisted)
    assert res.coeffs_in_field
    assert twisted.coeffs == (SqrtPScalar(p, Fraction(-6, 5)), SqrtPScalar(p, Fraction(1, 5)))
    arith = sk.arithmetic_frobenius(twisted)
    assert sk.defined_over_equivalence_gln(arith).companion == ((0, -5), (1, 6))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PRIMES), st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.integers(0, 1), st.integers(-3, 3), st.integers(-4, 4))
def test_twist_commutes_with_charpoly(p, exps, parity, c, s2):
    # eigenvalues share the parity of their p-exponent, otherwise the
    # characteristic polynomial leaves the sqrt(p) scalars
    eigs = [SqrtPScalar(p, 1, 2 * e + parity) for e in exps]
    s = Fraction(s2, 2)
    direct = sk.SatakeParamGL.from_eigenvalues(sk.twist_eigenvalues(eigs, [c] * len(eigs), s, p))
    via_poly = sk.unramified_twist(sk.SatakeParamGL.from_eigenvalues(eigs), [c] * len(eigs), s, p)
    assert direct == via_poly


def test_charpoly_matches_sympy_for_rational_classes():
    p = 3
    eigs = [SqrtPScalar(p, 2), SqrtPScalar(p, Fraction(1, 3)), SqrtPScalar(p, -5)]
    res = sk.defined_over_equivalence_gln(sk.SatakeParamGL.from_eigenvalues(eigs))
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.Matrix(res.companion).charpoly(x).as_expr(), x)
    assert sorted(sympy.roots(poly).keys()) == sorted([2, sympy.Rational(1, 3), -5])


def test_holomorphic_weight_12_values():
    spec = sk.GL2FamilySpec(sk.HOLOMORPHIC, 0, 12, ((2, -24),))
    tp, sp = sk.hecke_eigenvalues_gl2(spec, 2)
    assert tp == SqrtPScalar(2, -24, -20)
    assert sp == SqrtPScalar.power(2, -10)
    poly = sk.satake_charpoly_gl2(spec, 2)
    assert poly.trace == SqrtPScalar(2, -24, -21)
    assert poly.det == SqrtPScalar.power(2, -10)


def test_maass_values():
    spec = sk.GL2FamilySpec(sk.MAASS, half, None, ((5, 2),))
    tp, sp = sk.hecke_eigenvalues_gl2(spec, 5)
    assert tp == SqrtPScalar(5, 2) and sp == SqrtPScalar.power(5, -1)
    with pytest.raises(UnknownPrime):
        sk.hecke_eigenvalues_gl2(spec, 7)


@pytest.mark.parametrize("kind,k", [(sk.HOLOMORPHIC, 2), (sk.HOLOMORPHIC, 5), (sk.MAASS, None)])
@pytest.mark.parametrize("s2", [-3, -2, -1, 0, 1, 2])
def test_truth_table(kind, k, s2):
    s = Fraction(s2, 2)
    spec = sk.GL2FamilySpec(kind, s, k, ((2, 1), (3, 1)))
    flags = sk.classify_gl2_family(spec)
    integer = s2 % 2 == 0
    l_side = (not integer) if kind == sk.HOLOMORPHIC else integer
    assert flags["L_algebraic"] == flags["L_arithmetic"] == l_side
    assert flags["C_algebraic"] == flags["C_arithmetic"] == (not l_side)
    assert flags["checks"] == {"lambda": True, "satake": True}


def test_non_half_integral_shift_is_flagged():
    flags = sk.classify_gl2_family(sk.GL2FamilySpec(sk.MAASS, Fraction(1, 3)))
    assert flags["note"] == "NonRational"
    assert not any(flags[key] for key in sk.FLAG_KEYS)


def test_family_spec_validation_and_json():
    with pytest.raises(InvalidArgument):
        sk.GL2FamilySpec(sk.HOLOMORPHIC, 0)
    with pytest.raises(InvalidArgument):
        sk.GL2FamilySpec(sk.MAASS, 0, 2)
    spec = sk.GL2FamilySpec(sk.HOLOMORPHIC, half, 3, ((2, 0), (3, Fraction(-1, 2))))
    assert sk.GL2FamilySpec.from_json(spec.to_json()) == spec


def test_integral_exponent_test():
    assert sk.integral_exponent_test([SqrtPScalar(2, 3, 2), SqrtPScalar(2, 0)])
    assert not sk.integral_exponent_test([SqrtPScalar(2, 3, 1)])
    with pytest.raises(InvalidArgument):
        sk.integral_exponent_test([])
