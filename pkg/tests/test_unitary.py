import random

import pytest
from hypothesis import given, settings, strategies as st

from rootdatum import unitary as un
from rootdatum.errors import FieldMismatch, FieldTooSmall, NotASquare
from rootdatum.fields import CoefficientField, GaussianRational
from rootdatum.unitary import CGroupUnitaryElement, GnElement

F = CoefficientField.prime(109)
Q_I = CoefficientField.gaussian()


@pytest.mark.parametrize("n", range(1, 9))
def test_phi_identities(n):
    assert un.phi_identities_hold(n)


@pytest.mark.parametrize("n,p", [(2, 101), (3, 13), (4, 13), (5, 41), (3, 109)])
def test_kernel_order(n, p):
    ker = un.kernel_of_j(n, CoefficientField.prime(p))
    assert len(ker) == n - 1
    ident = un.identity_element(GnElement, CoefficientField.prime(p), n)
    assert all(un.j_map(x) == ident for x in ker)


def test_kernel_needs_roots_of_unity():
    with pytest.raises(FieldTooSmall):
        un.kernel_of_j(3, CoefficientField.prime(7))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_j_of_c_multiplier(n):
    assert un.multiplier(un.j_of_c(F, n)) == F.elt((-1) ** (n - 1))


def test_quotient_identification():
    # (g, mu) and ((-1)^(n-1) g, -mu) are the same element
    a = CGroupUnitaryElement(F, 2, ((1, 2), (3, 4)), 5)
    b = CGroupUnitaryElement(F, 2, ((-1, -2), (-3, -4)), -5)
    assert a == b
    assert F.is_positive(a.mu)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.sampled_from([F, Q_I]))
def test_j_homomorphism_and_round_trip(seed, n, field):
    rng = random.Random(seed)
    x = un.random_element(CGroupUnitaryElement, field, n, rng)
    y = un.random_element(CGroupUnitaryElement, field, n, rng)
    assert un.j_map(un.multiply(x, y)) == un.multiply(un.j_map(x), un.j_map(y))
    assert un.round_trip(x) == x
    if x.gamma == 0:
        assert un.multiplier(un.j_map(x)) == field.pow(un.d(x), 1 - n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_group_axioms(seed, n):
    rng = random.Random(seed)
    for kind in (GnElement, CGroupUnitaryElement):
        x, y, z = (un.random_element(kind, F, n, rng) for _ in range(3))
        assert un.multiply(un.multiply(x, y), z) == un.multiply(x, un.multiply(y, z))
        e = un.identity_element(kind, F, n)
        assert un.multiply(x, un.inverse(x)) == e == un.multiply(un.inverse(x), x)


def test_c_acts_as_involution():
    rng = random.Random(3)
    c = CGroupUnitaryElement(F, 3, F.identity(3), 1, 1)
    assert un.multiply(c, c) == un.identity_element(CGroupUnitaryElement, F, 3)
    x = un.random_element(GnElement, F, 3, rng, gamma=0)
    assert x.conj_action().conj_action() == x


def test_j_prime_needs_square():
    x = un.identity_element(GnElement, F, 2)
    with pytest.raises(NotASquare):
        un.j_prime(x, 4, sqrt_choice=3)


def test_field_mismatch():
    a = un.identity_element(GnElement, F, 2)
    b = un.identity_element(GnElement, CoefficientField.prime(13), 2)
    with pytest.raises(FieldMismatch):
        un.multiply(a, b)


def test_gaussian_positivity_convention():
    x = CGroupUnitaryElement(Q_I, 2, Q_I.identity(2), GaussianRational(0, -3))
    assert x.mu == GaussianRational(0, 3)
    assert x.g == Q_I.scale(Q_I.elt(-1), Q_I.identity(2))
