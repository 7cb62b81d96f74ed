import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rootdatum import algebraicity as alg
from rootdatum import cgroup as cg
from rootdatum import datum as dt
from rootdatum.errors import (InvalidArgument, InvalidShift, NonDominant, NotAlgebraic,
                              RelationViolation)
from rootdatum.fields import CoefficientField, GaussianRational, I
from rootdatum.lattice import LatticeMap

half = Fraction(1, 2)
GROUPS = [("GL", 2), ("GL", 3), ("SL", 2), ("SL", 3), ("PGL", 2), ("Sp", 2)]


def half_integral_vectors(n):
    return st.lists(st.integers(-8, 8), min_size=n, max_size=n).map(
        lambda v: tuple(Fraction(x, 2) for x in v))


def test_gl2_examples():
    gl2, _ = dt.standard("GL", 2)
    p = alg.InfinitesimalParameter.diagonal((half, -half))
    assert alg.is_c_algebraic(p, gl2) and not alg.is_l_algebraic(p, gl2)
    q = alg.InfinitesimalParameter.diagonal((1, 0))
    assert alg.is_l_algebraic(q, gl2) and not alg.is_c_algebraic(q, gl2)


def test_parameter_rejects_non_integral_difference():
    with pytest.raises(InvalidArgument):
        alg.InfinitesimalParameter((half, 0), (0, 0))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_weyl_and_swap_invariance(entry, data):
    rd, _ = dt.standard(*entry)
    lam = data.draw(half_integral_vectors(rd.rank))
    shift = data.draw(st.lists(st.integers(-2, 2), min_size=rd.rank, max_size=rd.rank))
    p = alg.InfinitesimalParameter(lam, tuple(a + b for a, b in zip(lam, shift)))
    flags = (alg.is_l_algebraic(p, rd), alg.is_c_algebraic(p, rd))
    assert (alg.is_l_algebraic(p.swapped(), rd), alg.is_c_algebraic(p.swapped(), rd)) == flags
    for w in dt.weyl_group(rd):
        q = p.act(w)
        assert (alg.is_l_algebraic(q, rd), alg.is_c_algebraic(q, rd)) == flags


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([("GL", 2), ("GL", 3), ("SL", 2), ("Sp", 2)]), st.data())
def test_theta_twist_swaps_notions(entry, data):
    rd, g = dt.standard(*entry)
    theta = cg.enumerate_twisting_elements(rd, 3, g).elements[0]
    lam = data.draw(half_integral_vectors(rd.rank))
    p = alg.InfinitesimalParameter.diagonal(lam)
    assert alg.is_l_algebraic(alg.twist_by_theta(p, rd, theta, g), rd) == alg.is_c_algebraic(p, rd)


def test_twist_rejects_non_central_shift():
    rd, _ = dt.standard("GL", 2)
    p = alg.InfinitesimalParameter.diagonal((0, 0))
    with pytest.raises(InvalidShift):
        alg.twist_parameter(p, (1, 0), rd)
    with pytest.raises(InvalidShift):
        alg.twist_parameter(p, (Fraction(1, 3), Fraction(1, 3)), rd)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(GROUPS), st.data())
def test_cohomological_infchar_is_c_algebraic(entry, data):
    rd, _ = dt.standard(*entry)
    mu = data.draw(st.lists(st.integers(-5, 5), min_size=rd.rank, max_size=rd.rank))
    if any(sum(a * b for a, b in zip(mu, c)) < 0 for c in rd.simple_coroots):
        with pytest.raises(NonDominant):
            alg.infchar_of_algebraic_rep(mu, rd)
    else:
        assert alg.is_c_algebraic(alg.infchar_of_algebraic_rep(mu, rd), rd)


def test_canonicalize_picks_lex_least_in_orbit():
    rd, _ = dt.standard("GL", 3)
    p = alg.InfinitesimalParameter.diagonal((2, 0, 1))
    assert alg.canonicalize(p, rd).lambda_sigma == (0, 1, 2)
    cp = alg.InfinitesimalParameter((1, 0, 0), (0, 0, 0), "complex")
    assert alg.canonicalize(cp, rd) == alg.canonicalize(cp.swapped(), rd)


def test_hodge_tate_two_routes():
    rd, g = dt.standard("GL", 2)
    pkg = cg.build_g_tilde(rd, g)
    c_alg = alg.InfinitesimalParameter.diagonal((half, -half))
    orbit = alg.hodge_tate_prediction(c_alg, rd, pkg)
    assert len(orbit) == 2
    with pytest.raises(NotAlgebraic):
        alg.hodge_tate_prediction(c_alg, rd)
    assert alg.hodge_tate_prediction(alg.InfinitesimalParameter.diagonal((1, 0)), rd) == ((0, 1), (1, 0))


def test_transfer_along_identity():
    p = alg.InfinitesimalParameter((1, 0), (0, 1))
    assert alg.transfer_parameter(p, LatticeMap.identity(2)) == p


def test_parameter_json_round_trip():
    p = alg.InfinitesimalParameter((half, -half), (Fraction(3, 2), -half), "complex")
    assert alg.InfinitesimalParameter.from_json(p.to_json()) == p


def test_alpha_gl1_and_gl2_fixtures():
    one = ((GaussianRational(1),),)
    res = alg.conjugation_element(alg.ConjugationElement(one, one, one))
    assert res.order_divides_two and res.swap_invariant and res.sign_invariant
    ce = alg.ConjugationElement.from_weights((1, 0), (0, 1), ((0, 1), (-1, 0)))
    res = alg.conjugation_element(ce)
    assert res.order_divides_two and res.swap_invariant and res.sign_invariant
    ce = alg.ConjugationElement.from_weights((0, 0), (0, 0), ((1, 0), (0, -1)))
    assert alg.conjugation_element(ce).order_divides_two


def test_alpha_rejects_broken_weil_relation():
    # antidiagonal r swaps the weights, so lambda_sigma(i) r != r lambda_tau(i)
    ce = alg.ConjugationElement.from_weights((1, 0), (1, 0), ((0, 1), (1, 0)))
    with pytest.raises(RelationViolation):
        alg.conjugation_element(ce)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_alpha_random_fixtures(seed, n):
    ce = alg.random_conjugation_fixture(random.Random(seed), n)
    res = alg.conjugation_element(ce)
    assert res.order_divides_two and res.swap_invariant and res.sign_invariant
    f = CoefficientField.gaussian()
    assert f.matmul(res.alpha, res.alpha) == f.identity(n)


def test_gaussian_arithmetic():
    assert I * I == GaussianRational(-1)
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.inverse() == GaussianRational(1)
    assert z.conjugate().conjugate() == z
