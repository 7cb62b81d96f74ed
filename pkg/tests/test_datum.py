import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rootdatum import datum as dt
from rootdatum.errors import InvalidDatum, RankGuard, UnsupportedGroup
from rootdatum.lattice import determinant, dot, inverse_unimodular, matmul, matvec, transpose

CATALOG = [("GL", 1), ("GL", 2), ("GL", 3), ("GL", 4), ("SL", 2), ("SL", 3), ("SL", 4),
           ("PGL", 2), ("PGL", 3), ("Sp", 1), ("Sp", 2), ("Sp", 3), ("Torus", 2),
           ("UnitaryQuasiSplit", 2), ("UnitaryQuasiSplit", 3)]


def weyl_order(name, n):
    if name in ("GL", "SL", "PGL", "UnitaryQuasiSplit"):
        return math.factorial(n)
    if name == "Sp":
        return 2 ** n * math.factorial(n)
    return 1


@pytest.mark.parametrize("name,n", CATALOG)
def test_catalog_valid_with_expected_weyl_order(name, n):
    rd, g = dt.standard(name, n)
    assert dt.validate(rd)
    assert dt.validate_galois(rd, g)
    assert len(dt.weyl_group(rd)) == weyl_order(name, n)


@pytest.mark.parametrize("name,n", CATALOG)
def test_weyl_group_permutes_roots(name, n):
    rd, _ = dt.standard(name, n)
    roots = set(rd.roots)
    for w in dt.weyl_group(rd):
        assert {matvec(w, a) for a in rd.roots} == roots


def test_half_sum_examples():
    assert dt.half_sum_positive_roots(dt.standard("GL", 3)[0]) == (1, 0, -1)
    assert dt.half_sum_positive_roots(dt.standard("GL", 2)[0]) == (Fraction(1, 2), Fraction(-1, 2))
    assert dt.half_sum_positive_roots(dt.standard("Sp", 2)[0]) == (2, 1)
    assert dt.half_sum_positive_roots(dt.standard("Torus", 3)[0]) == (0, 0, 0)


def test_cartan_matrices():
    assert dt.standard("Sp", 2)[0].cartan_matrix == ((2, -1), (-2, 2))
    assert dt.standard("SL", 3)[0].cartan_matrix == ((2, -1), (-1, 2))


def test_validate_reports_first_failure():
    bad = dt.BasedRootDatum(1, ((1,), (-1,)), ((1,), (-1,)), (0,))
    res = dt.validate(bad)
    assert not res and "pairing" in res.message
    with pytest.raises(InvalidDatum):
        dt.require_valid(bad)


def test_catalog_errors():
    with pytest.raises(UnsupportedGroup):
        dt.standard("E", 8)
    with pytest.raises(UnsupportedGroup):
        dt.standard("SL", 1)
    assert dt.standard("u", 2)[0] == dt.standard("UnitaryQuasiSplit", 2)[0]


@pytest.mark.parametrize("name,n", CATALOG)
def test_dual_is_involution(name, n):
    rd, g = dt.standard(name, n)
    back = dt.dual(dt.dual(rd))
    assert (back.roots, back.coroots, back.simple) == (rd.roots, rd.coroots, rd.simple)
    assert dt.dual_action(dt.dual_action(g)).matrices == g.matrices


def test_dual_action_is_homomorphism_on_cyclic_group():
    # order-4 rotation of Z^2; M -> M^-t must respect the table
    rot = ((0, -1), (1, 0))
    mats = [((1, 0), (0, 1)), rot, matmul(rot, rot), matmul(rot, matmul(rot, rot))]
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    g = dt.GaloisActionData(4, table, mats)
    d = dt.dual_action(g)
    for i in range(4):
        for j in range(4):
            assert matmul(d.matrices[i], d.matrices[j]) == d.matrices[table[i][j]]


def test_langlands_duals():
    sl2, _ = dt.standard("SL", 2)
    pgl2, _ = dt.standard("PGL", 2)
    sp4, _ = dt.standard("Sp", 2)
    assert dt.based_isomorphism(dt.dual(sl2), pgl2) is not None
    assert dt.based_isomorphism(sl2, pgl2) is None
    assert dt.based_isomorphism(dt.dual(sp4), sp4) is None
    gl3, _ = dt.standard("GL", 3)
    assert dt.based_isomorphism(dt.dual(gl3), gl3) is not None


def test_derived_covers_gl2():
    cov = dt.derived_covers(dt.standard("GL", 2)[0])
    assert cov.ad_to_sc.matrix == ((2,),)
    assert dt.validate(cov.sc) and dt.validate(cov.ad)
    assert cov.g_to_sc.compose(cov.ad_to_g).matrix == cov.sc.cartan_matrix


def test_direct_product_and_json_round_trip():
    a, ga = dt.standard("SL", 2)
    b, gb = dt.standard("UnitaryQuasiSplit", 2)
    rd, g = dt.direct_product(a, b, ga, gb)
    assert rd.rank == 3 and g.order == 2
    assert dt.validate(rd) and dt.validate_galois(rd, g)
    obj = dt.datum_to_json(rd, g)
    rd2, g2 = dt.datum_from_json(obj)
    assert dt.datum_to_json(rd2, g2) == obj


def test_isomorphism_guard():
    big, _ = dt.standard("GL", 7)
    with pytest.raises(RankGuard):
        dt.based_isomorphism(big, big)


unimodular2 = st.lists(st.sampled_from([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 0)),
                                        ((-1, 0), (0, 1))]), min_size=1, max_size=4)


def _apply_basis_change(rd, u):
    ut_inv = transpose(inverse_unimodular(u))
    roots = tuple(matvec(u, a) for a in rd.roots)
    coroots = tuple(matvec(ut_inv, c) for c in rd.coroots)
    return dt.BasedRootDatum(rd.rank, roots, coroots, rd.simple)


@settings(max_examples=30, deadline=None)
@given(unimodular2, st.sampled_from([("GL", 2), ("SL", 3), ("PGL", 3), ("Sp", 2)]))
def test_isomorphism_found_after_basis_change(gens, entry):
    rd, _ = dt.standard(*entry)
    u = ((1, 0), (0, 1))  # every entry above has rank 2
    for m in gens:
        u = matmul(m, u)
    moved = _apply_basis_change(rd, u)
    assert dt.validate(moved)
    iso = dt.based_isomorphism(rd, moved)
    assert iso is not None
    assert abs(determinant(iso.matrix)) == 1
    for i in rd.simple:
        assert iso(rd.roots[i]) in {moved.roots[j] for j in moved.simple}


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CATALOG), st.data())
def test_reflections_are_involutions_preserving_pairing(entry, data):
    rd, _ = dt.standard(*entry)
    if not rd.roots:
        return
    i = data.draw(st.integers(0, len(rd.roots) - 1))
    s = dt.reflection_matrix(rd.roots[i], rd.coroots[i])
    assert matmul(s, s) == tuple(tuple(int(a == b) for b in range(rd.rank)) for a in range(rd.rank))
    assert dot(matvec(s, rd.roots[i]), rd.coroots[i]) == -2
