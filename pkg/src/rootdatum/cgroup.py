"""Twisting elements, the Gm-extension G-tilde and the C-group.

The extension is built at the level of character lattices:

* ``X*(T^1)`` is the pullback of ``X*(T^sc) + Z`` over ``X*(Z)``, i.e. the
  pairs ``(x, m)`` with ``x - m*eta`` in the root lattice (``eta`` is the
  half-sum for the simply connected cover, all ones in the
  fundamental-weight basis);
* ``X*(T~)`` is the pushout of ``X*(T)`` and ``X*(T^1)`` over ``X*(T^ad)``.

``theta`` is the image of ``(eta, 1)`` and ``xi`` the image of ``(0, 2)``.
The C-group is then the L-group of G-tilde.  Independently, the C-group datum
is also obtained as the quotient of ``G^ x Gm`` by ``(e, -1)``, and the two
are compared by a based isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import datum as _datum
from .datum import (BasedRootDatum, GaloisActionData, LGroupData, based_isomorphism,
                    datum_from_json, datum_to_json, derived_covers, dual_action,
                    reflection_matrix, require_valid, validate, validate_galois, weyl_group)
from .errors import ConstructionFailure, DimensionMismatch, InvalidArgument
from .lattice import (IntMatrix, IntVector, Lattice, LatticeMap, affine_points_in_box,
                      cokernel_invariants, contains, determinant, dot, identity,
                      lattice_basis, matmul, matvec, pullback_lattice, pushout_lattice,
                      right_inverse, solve_integer, transpose)

MAX_BOX = 100


def _check_box(bound: int) -> None:
    if not 0 <= bound <= MAX_BOX:
        raise InvalidArgument(f"box bound must lie in [0, {MAX_BOX}]")


def _galois(rd: BasedRootDatum, galois: Optional[GaloisActionData]) -> GaloisActionData:
    return galois or GaloisActionData.trivial(rd.rank)


# ---------------------------------------------------------------------------
# twisting elements


def is_twisting_element(rd: BasedRootDatum, theta: Sequence[int],
                        galois: Optional[GaloisActionData] = None) -> bool:
    """Galois-stable and pairing to 1 with every simple coroot."""
    if len(theta) != rd.rank:
        raise DimensionMismatch(f"vector of length {len(theta)} for rank {rd.rank}")
    theta = tuple(theta)
    if any(dot(theta, c) != 1 for c in rd.simple_coroots):
        return False
    return all(tuple(matvec(m, theta)) == theta for m in _galois(rd, galois).matrices)


def _twisting_system(rd, galois, target=1):
    rows = [tuple(c) for c in rd.simple_coroots] + _galois(rd, galois).fixed_vectors_constraints()
    rhs = [target] * rd.semisimple_rank + [0] * (len(rows) - rd.semisimple_rank)
    return rows, rhs


@dataclass(frozen=True)
class TwistingSearch:
    existence: bool
    elements: Tuple[IntVector, ...]
    particular: Optional[IntVector] = None


def enumerate_twisting_elements(rd: BasedRootDatum, box_bound: int,
                                galois: Optional[GaloisActionData] = None) -> TwistingSearch:
    """Twisting elements in ``[-box_bound, box_bound]^rank``.

    ``existence`` comes from solving the affine integer system exactly, so it
    is meaningful even when the box is empty of solutions.
    """
    _check_box(box_bound)
    rows, rhs = _twisting_system(rd, galois)
    if not rows:
        x0, kernel = (0,) * rd.rank, identity(rd.rank)
    else:
        sol = solve_integer(rows, rhs, rd.rank)
        if sol is None:
            return TwistingSearch(False, ())
        x0, kernel = sol
    pts = affine_points_in_box(x0, kernel, box_bound)
    return TwistingSearch(True, tuple(pts), tuple(x0))


# ---------------------------------------------------------------------------
# e = (2 delta)(-1)


def element_e(rd: BasedRootDatum, check: bool = True) -> IntVector:
    """The class of ``2*delta`` in ``X*/2X*`` (entries 0/1).

    With ``check`` the class is verified central (even pairing with every
    coroot) and Weyl-invariant; failures raise :class:`ConstructionFailure`.
    """
    two_delta = tuple(int(2 * x) for x in _datum.half_sum_positive_roots(rd))
    if check:
        report = e_class_report(rd, two_delta)
        if not all(report.values()):
            raise ConstructionFailure(f"2*delta fails checks: {report}")
    return tuple(x % 2 for x in two_delta)


def e_class_report(rd: BasedRootDatum, two_delta: Optional[Sequence] = None) -> dict:
    if two_delta is None:
        two_delta = tuple(2 * x for x in _datum.half_sum_positive_roots(rd))
    integral = all(Fraction(x).denominator == 1 for x in two_delta)
    central = integral and all(dot(two_delta, c) % 2 == 0 for c in rd.coroots)
    invariant = integral
    if integral:
        # invariance under the simple reflections gives invariance under W
        for a, c in zip(rd.simple_roots, rd.simple_coroots):
            s = reflection_matrix(a, c)
            if any((x - y) % 2 for x, y in zip(matvec(s, two_delta), two_delta)):
                invariant = False
                break
    return {"integral": integral, "central": central, "weyl_invariant": invariant}


def gamma_is_base_independent(rd: BasedRootDatum) -> bool:
    """Whether the class of ``eta`` in ``X*(Z)`` survives every Weyl change of base.

    ``Z`` is the kernel of ``G^sc -> G^ad``, so ``X*(Z)`` is ``X*(T^sc)``
    modulo the root lattice.  Rebasing by ``w`` replaces ``eta`` by
    ``w(eta)``; the class is unchanged when ``w(eta) - eta`` is a sum of
    roots.
    """
    covers = derived_covers(rd)
    k = rd.semisimple_rank
    if not k:
        return True
    eta = (1,) * k
    for w in weyl_group(covers.sc):
        diff = tuple(a - b for a, b in zip(matvec(w, eta), eta))
        if not contains(diff, covers.ad_to_sc):
            return False
    return True


# ---------------------------------------------------------------------------
# G-tilde


@dataclass(frozen=True)
class ExtensionPackage:
    base: BasedRootDatum
    base_galois: GaloisActionData
    g_tilde: BasedRootDatum
    g_tilde_galois: GaloisActionData
    theta: IntVector
    xi: IntVector
    gm_cochar: IntVector
    projection: LatticeMap  # X*(T) -> X*(T~)
    t1_map: LatticeMap  # X*(T^1) -> X*(T~)
    t1_basis: IntMatrix  # columns: basis of X*(T^1) inside X*(T^sc) + Z
    e_class: IntVector
    c_group: LGroupData

    def quotient_coordinate(self, v: Sequence[int]) -> int:
        """Image of ``v`` in ``X*(T~)/X*(T) = Z``."""
        return dot(self.gm_cochar, v)


def _solve_functional(maps: Sequence[LatticeMap], values: Sequence[Sequence[int]], n: int
                      ) -> IntVector:
    """Integer ``phi`` in ``Z^n`` with ``phi . f(x) = values_f . x`` for each map ``f``."""
    rows, rhs = [], []
    for f, val in zip(maps, values):
        for j, col in enumerate(f.columns):
            rows.append(tuple(col))
            rhs.append(val[j])
    sol = solve_integer(rows, rhs, n)
    if sol is None:
        raise ConstructionFailure("functional does not descend to the pushout")
    return sol[0]


def build_g_tilde(rd: BasedRootDatum, galois: Optional[GaloisActionData] = None) -> ExtensionPackage:
    galois = _galois(rd, galois)
    require_valid(rd, galois)
    r, k = rd.rank, rd.semisimple_rank
    covers = derived_covers(rd, galois)
    cartan = covers.ad_to_sc.matrix
    eta = (1,) * k

    # X*(T^1) = {(x, m) : x - m*eta in C Z^k}
    ident = LatticeMap.identity(k)
    eta_map = LatticeMap(Lattice(1), Lattice(k), tuple((e,) for e in eta) if k else ())
    t1, p1, p2 = pullback_lattice(ident, eta_map, LatticeMap(Lattice(k), Lattice(k), cartan))
    n1 = t1.rank
    basis = tuple(tuple(row) for row in p1.matrix) + tuple(tuple(row) for row in p2.matrix)
    if n1 != k + 1 or abs(determinant(basis)) == 0:
        raise ConstructionFailure("X*(T^1) has the wrong rank")

    def t1_coords(v):
        sol = solve_integer(basis, v, n1)
        if sol is None:
            raise ConstructionFailure(f"{v} is not in X*(T^1)")
        return sol[0]

    ad_cols = [t1_coords(tuple(cartan[j][i] for j in range(k)) + (0,)) for i in range(k)]
    ad_to_t1 = LatticeMap(Lattice(k), t1, transpose(ad_cols, n1) if k else ((),) * n1)
    if not k:
        ad_to_t1 = LatticeMap(Lattice(0), t1, tuple(() for _ in range(n1)))
    tt, i1, i2 = pushout_lattice(covers.ad_to_g, ad_to_t1)
    n = tt.rank
    if n != r + 1:
        raise ConstructionFailure("X*(T~) has the wrong rank")

    theta = tuple(i2(t1_coords(eta + (1,))))
    xi = tuple(i2(t1_coords((0,) * k + (2,))))
    # the central Gm: zero on X*(T), the Z-coordinate on X*(T^1)
    gm = _solve_functional([i1, i2], [(0,) * r, p2.matrix[0]], n)

    # roots and coroots of G-tilde
    roots = tuple(tuple(i1(a)) for a in rd.roots)
    coroots = []
    for c, coeff in zip(rd.coroots, rd.coroot_coefficients):
        on_t1 = tuple(dot(coeff, col[:k]) for col in transpose(basis, n1)) if k else (0,) * n1
        coroots.append(_solve_functional([i1, i2], [c, on_t1], n))
    name = f"{rd.name}~" if rd.name else ""
    gt = BasedRootDatum(n, roots, tuple(coroots), rd.simple, name)

    # Galois: M on X*(T), the simple-root permutation on X*(T^sc), trivial on Z
    q = tuple(a + b for a, b in zip(i1.matrix, i2.matrix))
    q_plus = right_inverse(q, r + n1)
    mats = []
    for m, perm in zip(galois.matrices, covers.sc_galois.matrices):
        big = tuple(tuple(perm[i][j] if j < k else 0 for j in range(k + 1)) if i < k
                    else tuple(1 if j == k else 0 for j in range(k + 1)) for i in range(k + 1))
        on_t1 = _change_basis(big, basis, n1)
        block = [[0] * (r + n1) for _ in range(r + n1)]
        for i in range(r):
            for j in range(r):
                block[i][j] = m[i][j]
        for i in range(n1):
            for j in range(n1):
                block[r + i][r + j] = on_t1[i][j]
        mt = matmul(matmul(q, block, r + n1), q_plus, n)
        if matmul(mt, q, r + n1) != matmul(q, block, r + n1):
            raise ConstructionFailure("Galois action does not descend to X*(T~)")
        mats.append(mt)
    gt_galois = GaloisActionData(galois.order, galois.table, tuple(mats))
    pkg = ExtensionPackage(rd, galois, gt, gt_galois, theta, xi, tuple(gm), i1, i2, basis,
                           element_e(rd), _datum.l_group(gt, gt_galois))
    problems = check_package(pkg)
    if problems:
        raise ConstructionFailure("; ".join(problems))
    return pkg


def _change_basis(m: IntMatrix, basis: IntMatrix, n: int) -> IntMatrix:
    """``basis^-1 m basis`` for a square integer ``basis`` with determinant +-1
    or, more generally, whenever the result is integral."""
    cols = []
    for j in range(n):
        col = tuple(row[j] for row in basis)
        img = matvec(m, col)
        sol = solve_integer(basis, img, n)
        if sol is None:
            raise ConstructionFailure("action does not preserve X*(T^1)")
        cols.append(sol[0])
    return transpose(cols, n)


def check_package(pkg: ExtensionPackage) -> List[str]:
    """Invariant violations of an extension package (empty when consistent)."""
    out = []
    if not validate(pkg.g_tilde):
        out.append(f"G~ datum invalid: {validate(pkg.g_tilde).message}")
    if not validate_galois(pkg.g_tilde, pkg.g_tilde_galois):
        out.append("G~ Galois action invalid")
    inv = cokernel_invariants(pkg.projection)
    if inv.invariant_factors or inv.free_rank != 1:
        out.append(f"X*(T) -> X*(T~) has cokernel {inv}")
    if any(dot(pkg.gm_cochar, col) for col in pkg.projection.columns):
        out.append("Gm cocharacter does not vanish on X*(T)")
    if pkg.quotient_coordinate(pkg.theta) != 1:
        out.append("theta does not map to 1 in the quotient")
    if dot(pkg.xi, pkg.gm_cochar) != 2:
        out.append("<xi, gm> != 2")
    if any(dot(pkg.xi, c) for c in pkg.g_tilde.simple_coroots):
        out.append("xi pairs nontrivially with a simple coroot")
    for m in pkg.g_tilde_galois.matrices:
        if tuple(matvec(m, pkg.xi)) != pkg.xi:
            out.append("xi is not Galois-stable")
            break
    if not is_twisting_element(pkg.g_tilde, pkg.theta, pkg.g_tilde_galois):
        out.append("theta is not a twisting element of G~")
    if not verify_chi_maps_to_2theta(pkg):
        out.append("(2 delta, 1) does not map to 2 theta")
    return out


def verify_chi_maps_to_2theta(pkg: ExtensionPackage) -> bool:
    """``(2*delta, 1)`` in ``X_*(T^) + Z`` lands on ``2*theta`` in ``X_*(T~^)``.

    The map is ``(x, m) -> proj(x) + m*xi``, the cocharacter shadow of the
    isogeny ``G^ x Gm -> G~^``.
    """
    two_delta = tuple(int(2 * x) for x in _datum.half_sum_positive_roots(pkg.base))
    img = tuple(a + b for a, b in zip(pkg.projection(two_delta), pkg.xi))
    return img == tuple(2 * t for t in pkg.theta)


# ---------------------------------------------------------------------------
# splittings


@dataclass(frozen=True)
class Splittings:
    characters: Tuple[IntVector, ...]
    twisting_elements: Tuple[IntVector, ...]  # theta - chi, pulled back to X*(T)


def splittings(pkg: ExtensionPackage, box_bound: int) -> Splittings:
    """Sections of ``X*(T) -> X*(T~) -> Z`` in the box, with the matching twisting elements.

    A splitting is a Galois-stable ``chi`` killing every simple coroot of G~
    and mapping to 1 in ``Z``; ``theta - chi`` then lies in ``X*(T)`` and is a
    twisting element of G.
    """
    _check_box(box_bound)
    gt = pkg.g_tilde
    rows = [tuple(c) for c in gt.simple_coroots] + [pkg.gm_cochar]
    rhs = [0] * gt.semisimple_rank + [1]
    rows += pkg.g_tilde_galois.fixed_vectors_constraints()
    rhs += [0] * (len(rows) - len(rhs))
    sol = solve_integer(rows, rhs, gt.rank)
    if sol is None:
        return Splittings((), ())
    chars = tuple(affine_points_in_box(sol[0], sol[1], box_bound))
    twists = []
    for chi in chars:
        diff = tuple(a - b for a, b in zip(pkg.theta, chi))
        pre = solve_integer(pkg.projection.matrix, diff, pkg.base.rank)
        if pre is None:
            raise ConstructionFailure(f"theta - chi is not in X*(T) for chi={chi}")
        t = tuple(pre[0])
        if not is_twisting_element(pkg.base, t, pkg.base_galois):
            raise ConstructionFailure(f"theta - chi is not a twisting element for chi={chi}")
        # inverse direction: t -> theta - proj(t)
        if tuple(a - b for a, b in zip(pkg.theta, pkg.projection(t))) != chi:
            raise ConstructionFailure("splitting bijection does not invert")
        twists.append(t)
    if len(set(twists)) != len(twists):
        raise ConstructionFailure("splitting bijection is not injective")
    return Splittings(chars, tuple(twists))


def twisting_from_splitting(pkg: ExtensionPackage, chi: Sequence[int]) -> IntVector:
    diff = tuple(a - b for a, b in zip(pkg.theta, chi))
    pre = solve_integer(pkg.projection.matrix, diff, pkg.base.rank)
    if pre is None:
        raise InvalidArgument("theta - chi does not lie in X*(T)")
    return tuple(pre[0])


def splitting_from_twisting(pkg: ExtensionPackage, t: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(pkg.theta, pkg.projection(t)))


# ---------------------------------------------------------------------------
# C-group as (G^ x Gm) / <(e, -1)>


def quotient_lattice_basis(rd: BasedRootDatum) -> IntMatrix:
    """HNF rows spanning ``{(mu, m) : <mu, 2 delta> + m even}``."""
    r = rd.rank
    two_delta = tuple(int(2 * x) for x in _datum.half_sum_positive_roots(rd))
    gens = [tuple(1 if j == i else 0 for j in range(r)) + (-two_delta[i],) for i in range(r)]
    gens.append((0,) * r + (2,))
    return lattice_basis(gens, r + 1)


def c_group_via_quotient(rd: BasedRootDatum, galois: Optional[GaloisActionData] = None
                         ) -> LGroupData:
    galois = _galois(rd, galois)
    require_valid(rd, galois)
    element_e(rd)
    r = rd.rank
    b = transpose(quotient_lattice_basis(rd), r + 1)  # columns = basis of L

    def coords(v):
        sol = solve_integer(b, v, r + 1)
        if sol is None:
            raise ConstructionFailure(f"{v} is not a character of the quotient")
        return tuple(sol[0])

    roots = tuple(coords(tuple(c) + (0,)) for c in rd.coroots)
    bt = transpose(b, r + 1)
    coroots = tuple(tuple(matvec(bt, tuple(a) + (0,))) for a in rd.roots)
    mats = []
    for m in dual_action(galois).matrices:
        ext = tuple(tuple(m[i][j] if i < r and j < r else int(i == j == r) for j in range(r + 1))
                    for i in range(r + 1))
        mats.append(_change_basis(ext, b, r + 1))
    name = f"C({rd.name})" if rd.name else ""
    cg = BasedRootDatum(r + 1, roots, coroots, rd.simple, name)
    cg_galois = GaloisActionData(galois.order, galois.table, tuple(mats))
    if not validate(cg) or not validate_galois(cg, cg_galois):
        raise ConstructionFailure("quotient C-group datum is invalid")
    return LGroupData(cg, cg_galois)


@dataclass(frozen=True)
class Agreement:
    agree: bool
    witness: Optional[LatticeMap]
    via_g_tilde: LGroupData
    via_quotient: LGroupData


def c_group_agreement(rd: BasedRootDatum, galois: Optional[GaloisActionData] = None
                      ) -> Agreement:
    """Compare the L-group of G~ with the quotient construction."""
    pkg = build_g_tilde(rd, galois)
    a = pkg.c_group
    b = c_group_via_quotient(rd, galois)
    iso = based_isomorphism(a.dual_datum, b.dual_datum, a.galois, b.galois)
    return Agreement(iso is not None, iso, a, b)


# ---------------------------------------------------------------------------
# JSON


def package_to_json(pkg: ExtensionPackage) -> dict:
    return {
        "base": datum_to_json(pkg.base, pkg.base_galois),
        "g_tilde": datum_to_json(pkg.g_tilde, pkg.g_tilde_galois),
        "theta": list(pkg.theta),
        "xi": list(pkg.xi),
        "gm_cochar": list(pkg.gm_cochar),
        "projection": [list(row) for row in pkg.projection.matrix],
        "t1_map": [list(row) for row in pkg.t1_map.matrix],
        "t1_basis": [list(row) for row in pkg.t1_basis],
        "e_class": list(pkg.e_class),
        "c_group": datum_to_json(pkg.c_group.dual_datum, pkg.c_group.galois),
    }


def package_from_json(obj: dict) -> ExtensionPackage:
    base, base_g = datum_from_json(obj["base"])
    gt, gt_g = datum_from_json(obj["g_tilde"])
    cg, cg_g = datum_from_json(obj["c_group"])
    n = gt.rank
    t1b = tuple(tuple(row) for row in obj["t1_basis"])
    return ExtensionPackage(
        base, base_g, gt, gt_g,
        tuple(obj["theta"]), tuple(obj["xi"]), tuple(obj["gm_cochar"]),
        LatticeMap(Lattice(base.rank), Lattice(n), tuple(tuple(r) for r in obj["projection"])),
        LatticeMap(Lattice(len(t1b)), Lattice(n), tuple(tuple(r) for r in obj["t1_map"])),
        t1b, tuple(obj["e_class"]), LGroupData(cg, cg_g))
