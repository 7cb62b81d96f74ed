from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from rootdatum.errors import DimensionMismatch, TorsionCokernel
from rootdatum.lattice import (Lattice, LatticeMap, affine_points_in_box, cokernel_invariants,
                               contains, determinant, hermite_normal_form, integer_kernel,
                               inverse_unimodular, matmul, matvec, pullback_lattice,
                               pushout_lattice, smith_normal_form, solve_integer, solve_rational)


def matrices(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def square(n_max=4, bound=6):
    return st.integers(1, n_max).flatmap(lambda n: st.lists(
        st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_transforms_and_diagonal(m):
    nc = len(m[0])
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m, nc), v, nc) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(m), nc))]
    nonzero = [x for x in diag if x]
    assert all(x >= 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # independent oracle: sympy's invariant factors
    ref = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    ref_diag = sorted(abs(ref[i, i]) for i in range(min(ref.shape)))
    assert sorted(diag) == ref_diag


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_same_row_lattice(m):
    nc = len(m[0])
    h, u = hermite_normal_form(m)
    assert matmul(u, m, nc) == h
    assert abs(determinant(u)) == 1
    # every original row lies in the row lattice of h and conversely
    ht = LatticeMap.from_matrix(tuple(zip(*h)) if h else (), len(h))
    mt = LatticeMap.from_matrix(tuple(zip(*m)), len(m))
    for row in m:
        assert contains(row, ht)
    for row in h:
        assert contains(row, mt)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_rank_matches_sympy(m):
    nc = len(m[0])
    k = integer_kernel(m)
    for row in k:
        assert matvec(m, row) == (0,) * len(m)
    assert len(k) == nc - sympy.Matrix(m).rank()


@settings(max_examples=150, deadline=None)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_integer_finds_planted_solution(m, x):
    nc = len(m[0])
    x = x[:nc]
    b = matvec(m, x)
    sol = solve_integer(m, b)
    assert sol is not None
    x0, _ = sol
    assert matvec(m, x0) == b


@settings(max_examples=100, deadline=None)
@given(square())
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@settings(max_examples=100, deadline=None)
@given(square())
def test_solve_rational_matches_sympy(m):
    b = [1] * len(m)
    x = solve_rational(m, b)
    if sympy.Matrix(m).det() == 0:
        if x is not None:
            assert matvec(m, x) == tuple(Fraction(1) for _ in m)
    else:
        ref = sympy.Matrix(m).LUsolve(sympy.Matrix(b))
        assert tuple(x) == tuple(Fraction(int(r.p), int(r.q)) for r in ref)


def test_contains_index_two():
    two = LatticeMap.from_matrix([[2, 0], [0, 1]])
    assert contains((2, 5), two)
    assert not contains((1, 0), two)
    assert not contains((Fraction(1, 2), 0))
    with pytest.raises(DimensionMismatch):
        contains((1, 2, 3), two)


def test_cokernel_invariants():
    inv = cokernel_invariants(LatticeMap.from_matrix([[2, 0], [0, 3]]))
    assert inv.invariant_factors == (6,) and inv.free_rank == 0 and inv.order == 6
    inv = cokernel_invariants(LatticeMap.from_matrix([[2], [0]]))
    assert inv.invariant_factors == (2,) and inv.free_rank == 1 and inv.order is None


def test_inverse_unimodular():
    m = ((2, 1), (1, 1))
    assert matmul(m, inverse_unimodular(m)) == ((1, 0), (0, 1))


def test_pullback_of_index_two_inclusion():
    # Z -> Z by 2 and Z -> Z by 1: the fiber product is {(x, 2x)}
    f = LatticeMap.from_matrix([[2]])
    g = LatticeMap.identity(1)
    lat, p1, p2 = pullback_lattice(f, g)
    assert lat.rank == 1
    assert f.compose(p1).matrix == g.compose(p2).matrix


def test_pushout_free_and_torsion():
    f = LatticeMap.from_matrix([[1], [-1]])
    g = LatticeMap.from_matrix([[1]])
    lat, i1, i2 = pushout_lattice(f, g)
    assert lat.rank == 2
    assert i1.compose(f).matrix == i2.compose(g).matrix
    with pytest.raises(TorsionCokernel):
        pushout_lattice(LatticeMap.from_matrix([[2]]), LatticeMap(Lattice(1), Lattice(0), ()))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), max_size=2),
       st.integers(0, 3))
def test_affine_points_in_box_brute_force(x0, kernel, bound):
    kernel = [row for row in kernel if any(row)]
    got = affine_points_in_box(x0, kernel, bound)
    in_box = [(a, b, c) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
              for c in range(-bound, bound + 1)]
    diff = LatticeMap.from_matrix(tuple(zip(*kernel)), len(kernel)) if kernel else None
    want = [p for p in in_box
            if (tuple(p) == tuple(x0) if diff is None
                else contains(tuple(a - b for a, b in zip(p, x0)), diff))]
    assert got == sorted(want)
