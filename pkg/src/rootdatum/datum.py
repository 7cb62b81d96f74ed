"""Based root data, pinned Galois actions, duality and Weyl groups.

A :class:`BasedRootDatum` lives in coordinates: the character lattice and the
cocharacter lattice are both ``Z^rank`` and the pairing is the dot product.
Roots and coroots are listed in bijection by index, and ``simple`` picks out
the indices of the simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidDatum, RankGuard, UnsupportedGroup
from .lattice import (IntMatrix, IntVector, Lattice, LatticeMap, RationalVector, as_matrix,
                      determinant, dot, identity, inverse_unimodular, is_integral, matmul,
                      matvec, solve_integer, solve_rational, transpose)

WEYL_SIZE_BOUND = 10 ** 6
MAX_WEYL_RANK = 8
MAX_ISO_RANK = 6


@dataclass(frozen=True)
class BasedRootDatum:
    rank: int
    roots: Tuple[IntVector, ...]
    coroots: Tuple[IntVector, ...]
    simple: Tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", as_matrix(self.roots))
        object.__setattr__(self, "coroots", as_matrix(self.coroots))
        object.__setattr__(self, "simple", tuple(int(i) for i in self.simple))

    @cached_property
    def simple_roots(self) -> Tuple[IntVector, ...]:
        return tuple(self.roots[i] for i in self.simple)

    @cached_property
    def simple_coroots(self) -> Tuple[IntVector, ...]:
        return tuple(self.coroots[i] for i in self.simple)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    @cached_property
    def cartan_matrix(self) -> IntMatrix:
        """``A[i][j] = <alpha_i, alpha_j^vee>``."""
        return tuple(tuple(dot(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    @cached_property
    def root_coefficients(self) -> Tuple[RationalVector, ...]:
        """Each root written in the basis of simple roots."""
        return _coefficients(self.roots, self.simple_roots, self.rank)

    @cached_property
    def coroot_coefficients(self) -> Tuple[RationalVector, ...]:
        return _coefficients(self.coroots, self.simple_coroots, self.rank)

    @cached_property
    def positive(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.root_coefficients)
                     if c is not None and any(x > 0 for x in c))

    def root_index(self, v: Sequence[int]) -> Optional[int]:
        return self._root_lookup.get(tuple(v))

    def coroot_of(self, v: Sequence[int]) -> Optional[IntVector]:
        i = self.root_index(v)
        return None if i is None else self.coroots[i]

    @cached_property
    def _root_lookup(self) -> Dict[IntVector, int]:
        return {r: i for i, r in enumerate(self.roots)}


def _coefficients(vectors, basis, rank):
    cols = transpose(basis, rank)  # rank x k
    out = []
    for v in vectors:
        out.append(solve_rational(cols, v) if basis else (() if not any(v) else None))
    return tuple(out)


@dataclass(frozen=True)
class GaloisActionData:
    """A finite group (multiplication table, element 0 = identity) acting on X*."""

    order: int
    table: Tuple[Tuple[int, ...], ...]
    matrices: Tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", as_matrix(self.table))
        object.__setattr__(self, "matrices", tuple(as_matrix(m) for m in self.matrices))

    @classmethod
    def trivial(cls, rank: int) -> "GaloisActionData":
        return cls(1, ((0,),), (identity(rank),))

    @classmethod
    def cyclic2(cls, matrix: Sequence[Sequence[int]]) -> "GaloisActionData":
        m = as_matrix(matrix)
        return cls(2, ((0, 1), (1, 0)), (identity(len(m)), m))

    @property
    def is_trivial(self) -> bool:
        return all(m == identity(len(m)) for m in self.matrices)

    def cochar_matrices(self) -> Tuple[IntMatrix, ...]:
        """The contragredient action ``M^{-t}`` on the cocharacter lattice."""
        return tuple(transpose(inverse_unimodular(m), len(m)) if m else () for m in self.matrices)

    def fixed_vectors_constraints(self) -> List[Tuple[int, ...]]:
        """Rows of ``M - I`` for every element; ``x`` is stable iff all vanish."""
        rows = []
        for m in self.matrices:
            n = len(m)
            rows.extend(tuple(m[i][j] - (i == j) for j in range(n)) for i in range(n))
        return rows


@dataclass(frozen=True)
class LGroupData:
    """``dual_datum`` with the Galois action used to form the semidirect product."""

    dual_datum: BasedRootDatum
    galois: GaloisActionData


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    message: str = ""

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# validation


def validate(rd: BasedRootDatum) -> ValidationResult:
    """Check the root datum axioms; the message names the first failure."""
    r = rd.rank
    if len(rd.roots) != len(rd.coroots):
        return ValidationResult(False, "roots and coroots differ in number")
    for v in rd.roots + rd.coroots:
        if len(v) != r:
            return ValidationResult(False, f"vector {v} does not have length {r}")
    if len(set(rd.roots)) != len(rd.roots):
        return ValidationResult(False, "repeated root")
    if len(set(rd.simple)) != len(rd.simple) or any(not 0 <= i < len(rd.roots) for i in rd.simple):
        return ValidationResult(False, "simple indices are not distinct valid root indices")
    for i, (a, c) in enumerate(zip(rd.roots, rd.coroots)):
        if dot(a, c) != 2:
            return ValidationResult(False, f"pairing <alpha,alpha_vee> != 2 for root {i}")
    for i, (a, c) in enumerate(zip(rd.roots, rd.coroots)):
        j = rd.root_index(tuple(-x for x in a))
        if j is None or rd.coroots[j] != tuple(-x for x in c):
            return ValidationResult(False, f"root {i} has no negative partner")
        if rd.root_index(tuple(2 * x for x in a)) is not None:
            return ValidationResult(False, f"root system is not reduced at root {i}")
    for i, (a, c) in enumerate(zip(rd.roots, rd.coroots)):
        for j, (b, d) in enumerate(zip(rd.roots, rd.coroots)):
            sb = tuple(x - dot(b, c) * y for x, y in zip(b, a))
            sd = tuple(x - dot(a, d) * y for x, y in zip(d, c))
            k = rd.root_index(sb)
            if k is None or rd.coroots[k] != sd:
                return ValidationResult(
                    False, f"reflection in root {i} does not permute roots/coroots (at {j})")
    if rd.simple:
        cols = transpose(rd.simple_roots, r)
        if _rank(cols) != len(rd.simple) or _rank(transpose(rd.simple_coroots, r)) != len(rd.simple):
            return ValidationResult(False, "simple roots are linearly dependent")
    for label, coeffs in (("root", rd.root_coefficients), ("coroot", rd.coroot_coefficients)):
        for i, c in enumerate(coeffs):
            if c is None or not is_integral(c) or (any(x > 0 for x in c) and any(x < 0 for x in c)):
                return ValidationResult(
                    False, f"{label} {i} is not a same-sign integer combination of simple {label}s")
    return ValidationResult(True, "ok")


def _rank(m) -> int:
    from .lattice import smith_normal_form
    if not m:
        return 0
    _, d, _ = smith_normal_form(m)
    return sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i])


def validate_galois(rd: BasedRootDatum, g: GaloisActionData) -> ValidationResult:
    """Check that ``g`` is a homomorphism into pinned automorphisms of ``rd``."""
    if len(g.matrices) != g.order or len(g.table) != g.order:
        return ValidationResult(False, "group order does not match table/matrices")
    for m in g.matrices:
        if len(m) != rd.rank or any(len(row) != rd.rank for row in m):
            return ValidationResult(False, "action matrix has wrong shape")
        if abs(determinant(m)) != 1:
            return ValidationResult(False, "action matrix is not invertible over Z")
    if rd.rank and g.matrices[0] != identity(rd.rank):
        return ValidationResult(False, "element 0 must act trivially")
    for a in range(g.order):
        for b in range(g.order):
            if matmul(g.matrices[a], g.matrices[b], rd.rank) != g.matrices[g.table[a][b]]:
                return ValidationResult(False, f"action is not a homomorphism at ({a},{b})")
    simple_set = set(rd.simple_roots)
    for idx, (m, mt) in enumerate(zip(g.matrices, g.cochar_matrices())):
        for a, c in zip(rd.roots, rd.coroots):
            ma = matvec(m, a)
            if rd.coroot_of(ma) != matvec(mt, c):
                return ValidationResult(False, f"element {idx} does not preserve the root datum")
        if {matvec(m, a) for a in rd.simple_roots} != simple_set:
            return ValidationResult(False, f"element {idx} does not preserve the simple roots")
    return ValidationResult(True, "ok")


def require_valid(rd: BasedRootDatum, g: Optional[GaloisActionData] = None) -> None:
    res = validate(rd)
    if not res:
        raise InvalidDatum(res.message)
    if g is not None:
        res = validate_galois(rd, g)
        if not res:
            raise InvalidDatum(res.message)


# ---------------------------------------------------------------------------
# duality


def dual(rd: BasedRootDatum) -> BasedRootDatum:
    """Swap characters with cocharacters and roots with coroots."""
    name = rd.name[:-len("^dual")] if rd.name.endswith("^dual") else (rd.name + "^dual" if rd.name else "")
    return BasedRootDatum(rd.rank, rd.coroots, rd.roots, rd.simple, name)


def dual_action(g: GaloisActionData) -> GaloisActionData:
    """The action on the dual datum: each element acts by ``M^{-t}``.

    This is the inverse of the transposed matrix, which keeps the pairing
    invariant and is again a homomorphism (the plain transpose would be an
    anti-homomorphism).
    """
    return GaloisActionData(g.order, g.table, g.cochar_matrices())


def l_group(rd: BasedRootDatum, g: Optional[GaloisActionData] = None) -> LGroupData:
    g = g or GaloisActionData.trivial(rd.rank)
    return LGroupData(dual(rd), dual_action(g))


# ---------------------------------------------------------------------------
# Weyl group and half-sum


def reflection_matrix(root: Sequence[int], coroot: Sequence[int]) -> IntMatrix:
    n = len(root)
    return tuple(tuple((i == j) - root[i] * coroot[j] for j in range(n)) for i in range(n))


def weyl_group(rd: BasedRootDatum, bound: int = WEYL_SIZE_BOUND) -> Tuple[IntMatrix, ...]:
    """All Weyl group elements as matrices on X*, sorted."""
    if rd.rank > MAX_WEYL_RANK:
        raise RankGuard(f"Weyl group enumeration limited to rank {MAX_WEYL_RANK}")
    gens = [reflection_matrix(a, c) for a, c in zip(rd.simple_roots, rd.simple_coroots)]
    start = identity(rd.rank)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = matmul(s, w, rd.rank)
                if ws not in seen:
                    seen.add(ws)
                    if len(seen) > bound:
                        raise RankGuard(f"Weyl group exceeds {bound} elements")
                    nxt.append(ws)
        frontier = nxt
    return tuple(sorted(seen))


def half_sum_positive_roots(rd: BasedRootDatum) -> RationalVector:
    return _half_sum(rd.rank, tuple(rd.roots[i] for i in rd.positive))


@lru_cache(maxsize=256)
def _half_sum(rank: int, positive_roots) -> RationalVector:
    total = [0] * rank
    for a in positive_roots:
        for k, x in enumerate(a):
            total[k] += x
    return tuple(Fraction(x, 2) for x in total)


def sum_positive_roots(rd: BasedRootDatum) -> IntVector:
    return tuple(int(2 * x) for x in half_sum_positive_roots(rd))


def simple_permutation(rd: BasedRootDatum, m: IntMatrix) -> Tuple[int, ...]:
    """``pi`` with ``m @ alpha_i == alpha_pi(i)`` for a pinned automorphism ``m``."""
    pos = {a: i for i, a in enumerate(rd.simple_roots)}
    perm = []
    for a in rd.simple_roots:
        img = tuple(matvec(m, a))
        if img not in pos:
            raise InvalidDatum("action does not preserve the simple roots")
        perm.append(pos[img])
    return tuple(perm)


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """Matrix sending ``e_i`` to ``e_perm(i)``."""
    n = len(perm)
    return tuple(tuple(1 if perm[j] == i else 0 for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# derived covers


@dataclass(frozen=True)
class DerivedCovers:
    """Simply connected and adjoint data attached to the derived group.

    ``sc`` has the fundamental weights as basis of X*, ``ad`` the simple
    roots.  The maps go ``X*(T^ad) -> X*(T) -> X*(T^sc)``.
    """

    sc: BasedRootDatum
    ad: BasedRootDatum
    sc_galois: GaloisActionData
    ad_galois: GaloisActionData
    ad_to_g: LatticeMap
    g_to_sc: LatticeMap
    ad_to_sc: LatticeMap


def derived_covers(rd: BasedRootDatum, galois: Optional[GaloisActionData] = None) -> DerivedCovers:
    k = rd.semisimple_rank
    galois = galois or GaloisActionData.trivial(rd.rank)
    sc_roots = tuple(tuple(dot(a, c) for c in rd.simple_coroots) for a in rd.roots)
    sc_coroots = tuple(tuple(int(x) for x in c) for c in rd.coroot_coefficients)
    ad_roots = tuple(tuple(int(x) for x in c) for c in rd.root_coefficients)
    ad_coroots = tuple(tuple(dot(a, c) for a in rd.simple_roots) for c in rd.coroots)
    base = rd.name or "G"
    sc = BasedRootDatum(k, sc_roots, sc_coroots, rd.simple, f"{base}^sc")
    ad = BasedRootDatum(k, ad_roots, ad_coroots, rd.simple, f"{base}^ad")
    perms = [permutation_matrix(simple_permutation(rd, m)) for m in galois.matrices]
    sc_g = GaloisActionData(galois.order, galois.table, perms)
    ad_g = GaloisActionData(galois.order, galois.table, perms)
    ad_to_g = LatticeMap(Lattice(k), Lattice(rd.rank), transpose(rd.simple_roots, rd.rank))
    g_to_sc = LatticeMap(Lattice(rd.rank), Lattice(k), rd.simple_coroots)
    return DerivedCovers(sc, ad, sc_g, ad_g, ad_to_g, g_to_sc, g_to_sc.compose(ad_to_g))


# ---------------------------------------------------------------------------
# catalog


def _ordered_datum(rank: int, positive_pairs, simple_roots, name: str) -> BasedRootDatum:
    """Assemble a datum from its positive (root, coroot) pairs.

    Positive roots are ordered by height and then coefficient vector; the
    negative roots follow in the same order.
    """
    cols = transpose(simple_roots, rank)

    def key(pair):
        c = solve_rational(cols, pair[0])
        return (sum(c), tuple(-x for x in c))

    pos = sorted(positive_pairs, key=key)
    roots = [p[0] for p in pos] + [tuple(-x for x in p[0]) for p in pos]
    coroots = [p[1] for p in pos] + [tuple(-x for x in p[1]) for p in pos]
    simple = tuple(roots.index(tuple(s)) for s in simple_roots)
    return BasedRootDatum(rank, tuple(roots), tuple(coroots), simple, name)


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def _gl(n: int) -> BasedRootDatum:
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            v = tuple(a - b for a, b in zip(_unit(n, i), _unit(n, j)))
            pairs.append((v, v))
    simple = [tuple(a - b for a, b in zip(_unit(n, i), _unit(n, i + 1))) for i in range(n - 1)]
    return _ordered_datum(n, pairs, simple, f"GL({n})")


def _sp(n: int) -> BasedRootDatum:
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign in (-1, 1):
                v = tuple(a + sign * b for a, b in zip(_unit(n, i), _unit(n, j)))
                pairs.append((v, v))
        e = _unit(n, i)
        pairs.append((tuple(2 * x for x in e), e))
    simple = [tuple(a - b for a, b in zip(_unit(n, i), _unit(n, i + 1))) for i in range(n - 1)]
    simple.append(tuple(2 * x for x in _unit(n, n - 1)))
    return _ordered_datum(n, pairs, simple, f"Sp({2 * n})")


CATALOG_NAMES = ("Torus", "GL", "SL", "PGL", "Sp", "UnitaryQuasiSplit")
_ALIASES = {name.lower(): name for name in CATALOG_NAMES}
_ALIASES.update({"t": "Torus", "u": "UnitaryQuasiSplit", "unitary": "UnitaryQuasiSplit"})


def canonical_name(name: str) -> str:
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        raise UnsupportedGroup(f"unknown catalog group {name!r}") from None


def standard(name: str, n: int) -> Tuple[BasedRootDatum, GaloisActionData]:
    """Catalog datum with its pinned Galois action.

    ``Sp`` takes the rank, so ``standard("Sp", 2)`` is Sp_4.
    ``UnitaryQuasiSplit(n)`` is the GL_n datum with the involution
    ``v -> -reverse(v)``.
    """
    key = canonical_name(name)
    if n < 1 or (key in ("SL", "PGL") and n < 2):
        raise UnsupportedGroup(f"{key}({n}) is not in the catalog")
    if key == "Torus":
        rd = BasedRootDatum(n, (), (), (), f"Torus({n})")
    elif key == "GL":
        rd = _gl(n)
    elif key == "SL":
        rd = _renamed(derived_covers(_gl(n)).sc, f"SL({n})")
    elif key == "PGL":
        rd = _renamed(derived_covers(_gl(n)).ad, f"PGL({n})")
    elif key == "Sp":
        rd = _sp(n)
    else:
        rd = _renamed(_gl(n), f"U({n})")
        flip = tuple(tuple(-1 if i + j == n - 1 else 0 for j in range(n)) for i in range(n))
        return rd, GaloisActionData.cyclic2(flip)
    return rd, GaloisActionData.trivial(rd.rank)


def _renamed(rd: BasedRootDatum, name: str) -> BasedRootDatum:
    return BasedRootDatum(rd.rank, rd.roots, rd.coroots, rd.simple, name)


def direct_product(a: BasedRootDatum, b: BasedRootDatum,
                   ga: Optional[GaloisActionData] = None, gb: Optional[GaloisActionData] = None
                   ) -> Tuple[BasedRootDatum, GaloisActionData]:
    """Product datum; Galois actions must share a group table (trivial by default)."""
    ga = ga or GaloisActionData.trivial(a.rank)
    gb = gb or GaloisActionData.trivial(b.rank)
    if ga.order == 1 and gb.order > 1:
        ga = GaloisActionData(gb.order, gb.table, (identity(a.rank),) * gb.order)
    if gb.order == 1 and ga.order > 1:
        gb = GaloisActionData(ga.order, ga.table, (identity(b.rank),) * ga.order)
    if ga.table != gb.table:
        raise InvalidDatum("Galois groups of the factors differ")
    n = a.rank + b.rank
    pad_a = lambda v: tuple(v) + (0,) * b.rank
    pad_b = lambda v: (0,) * a.rank + tuple(v)
    roots = tuple(map(pad_a, a.roots)) + tuple(map(pad_b, b.roots))
    coroots = tuple(map(pad_a, a.coroots)) + tuple(map(pad_b, b.coroots))
    simple = a.simple + tuple(len(a.roots) + i for i in b.simple)
    mats = tuple(_block_diag(ma, mb) for ma, mb in zip(ga.matrices, gb.matrices))
    name = f"{a.name} x {b.name}" if a.name and b.name else ""
    return BasedRootDatum(n, roots, coroots, simple, name), GaloisActionData(ga.order, ga.table, mats)


def _block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    na, nb = len(a), len(b)
    rows = [tuple(row) + (0,) * nb for row in a]
    rows += [(0,) * na + tuple(row) for row in b]
    return tuple(rows)


# ---------------------------------------------------------------------------
# based isomorphisms


def _cartan_preserving_bijections(ca: IntMatrix, cb: IntMatrix):
    k = len(ca)
    perm: List[int] = []
    used = [False] * k

    def extend(i):
        if i == k:
            yield tuple(perm)
            return
        for j in range(k):
            if used[j] or ca[i][i] != cb[j][j]:
                continue
            if all(ca[i][t] == cb[j][perm[t]] and ca[t][i] == cb[perm[t]][j] for t in range(i)):
                used[j] = True
                perm.append(j)
                yield from extend(i + 1)
                perm.pop()
                used[j] = False

    yield from extend(0)


def _is_based_iso(f: IntMatrix, a, b, ga, gb) -> bool:
    r = a.rank
    if abs(determinant(f)) != 1:
        return False
    ft = transpose(f, r)
    for alpha, cor in zip(a.roots, a.coroots):
        img = tuple(matvec(f, alpha))
        j = b.root_index(img)
        if j is None or tuple(matvec(ft, b.coroots[j])) != cor:
            return False
    if {tuple(matvec(f, s)) for s in a.simple_roots} != set(b.simple_roots):
        return False
    return all(matmul(f, ma, r) == matmul(mb, f, r) for ma, mb in zip(ga.matrices, gb.matrices))


def based_isomorphism(a: BasedRootDatum, b: BasedRootDatum,
                      ga: Optional[GaloisActionData] = None, gb: Optional[GaloisActionData] = None,
                      search_radius: int = 3, max_candidates: int = 200_000
                      ) -> Optional[LatticeMap]:
    """Search for ``F: X*(a) -> X*(b)`` carrying the based datum of ``a`` onto ``b``.

    Loops over Dynkin-compatible bijections of simple roots; for each one the
    conditions on ``F`` (simple roots, simple coroots through ``F^t`` and
    Galois equivariance) are an affine integer system, and a unimodular
    solution is searched for in it.  The search is bounded, so ``None`` means
    "no isomorphism found within the bound".
    """
    if max(a.rank, b.rank) > MAX_ISO_RANK:
        raise RankGuard(f"isomorphism search is limited to rank {MAX_ISO_RANK}")
    ga = ga or GaloisActionData.trivial(a.rank)
    gb = gb or GaloisActionData.trivial(b.rank)
    if (a.rank != b.rank or len(a.roots) != len(b.roots) or len(a.simple) != len(b.simple)
            or ga.table != gb.table):
        return None
    r = a.rank
    ident = identity(r)
    if _is_based_iso(ident, a, b, ga, gb):
        return LatticeMap.identity(r)
    for perm in _cartan_preserving_bijections(a.cartan_matrix, b.cartan_matrix):
        rows, rhs = [], []

        def var(s, j):
            return s * r + j

        for i, alpha in enumerate(a.simple_roots):
            beta = b.simple_roots[perm[i]]
            for s in range(r):
                row = [0] * (r * r)
                for j in range(r):
                    row[var(s, j)] = alpha[j]
                rows.append(row)
                rhs.append(beta[s])
            bcor = b.simple_coroots[perm[i]]
            acor = a.simple_coroots[i]
            for j in range(r):
                row = [0] * (r * r)
                for s in range(r):
                    row[var(s, j)] = bcor[s]
                rows.append(row)
                rhs.append(acor[j])
        for ma, mb in zip(ga.matrices, gb.matrices):
            for s in range(r):
                for j in range(r):
                    row = [0] * (r * r)
                    for t in range(r):
                        row[var(s, t)] += ma[t][j]
                        row[var(t, j)] -= mb[s][t]
                    rows.append(row)
                    rhs.append(0)
        sol = solve_integer(rows, rhs, r * r) if rows else (tuple([0] * (r * r)), identity(r * r))
        if sol is None:
            continue
        x0, kernel = sol
        f = _unimodular_in_coset(x0, kernel, r, search_radius, max_candidates)
        if f is not None and _is_based_iso(f, a, b, ga, gb):
            return LatticeMap(Lattice(r), Lattice(r), f)
    return None


def _to_matrix(x, r) -> IntMatrix:
    return tuple(tuple(x[s * r + j] for j in range(r)) for s in range(r))


def _unimodular_in_coset(x0, kernel, r, radius, cap) -> Optional[IntMatrix]:
    if not kernel:
        m = _to_matrix(x0, r)
        return m if abs(determinant(m)) == 1 else None
    if len(kernel) == 1:
        return _unimodular_on_line(x0, kernel[0], r)
    # centre the search on the rational point of the coset closest to the origin
    gram = [[sum(p * q for p, q in zip(u, v)) for v in kernel] for u in kernel]
    proj = [-sum(p * q for p, q in zip(u, x0)) for u in kernel]
    t_star = solve_rational(gram, proj) or (Fraction(0),) * len(kernel)
    centre = [round(t) for t in t_star]
    base = [x + sum(c * k[i] for c, k in zip(centre, kernel)) for i, x in enumerate(x0)]
    seen = 0
    for offset in _l1_ball(len(kernel), radius):
        seen += 1
        if seen > cap:
            break
        x = [b + sum(c * k[i] for c, k in zip(offset, kernel)) for i, b in enumerate(base)]
        m = _to_matrix(x, r)
        if abs(determinant(m)) == 1:
            return m
    return None


def _l1_ball(dim: int, radius: int):
    """Integer vectors ordered by L1 norm, then lexicographically."""
    for norm in range(radius + 1):
        yield from _compositions(dim, norm)


def _compositions(dim: int, norm: int):
    def rec(i, left, acc):
        if i == dim - 1:
            vals = [left, -left] if left else [0]
            for v in vals:
                yield tuple(acc + [v])
            return
        for a in range(left, -1, -1):
            for v in ([a, -a] if a else [0]):
                yield from rec(i + 1, left - a, acc + [v])

    yield from rec(0, norm, [])


def _unimodular_on_line(x0, k, r) -> Optional[IntMatrix]:
    """Integer ``t`` with ``det(x0 + t k) = +-1``, found through the determinant polynomial."""
    pts = list(range(r + 1))
    vals = [determinant(_to_matrix([a + t * b for a, b in zip(x0, k)], r)) for t in pts]
    coeffs = _interpolate(pts, vals)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    bound = 1 + int(max((abs(c) for c in coeffs[:-1]), default=0) / abs(coeffs[-1])) + 1
    for t in sorted(range(-bound, bound + 1), key=lambda t: (abs(t), t)):
        val = sum(c * t ** i for i, c in enumerate(coeffs))
        if abs(val) == 1:
            return _to_matrix([a + t * b for a, b in zip(x0, k)], r)
        if len(coeffs) == 1:
            break
    return None


def _interpolate(xs, ys) -> List[Fraction]:
    """Coefficients (low degree first) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xs[j] * basis[d + 1]
            denom *= xs[i] - xs[j]
        for d in range(n):
            coeffs[d] += ys[i] * basis[d] / denom
    return coeffs


# ---------------------------------------------------------------------------
# JSON


def datum_to_json(rd: BasedRootDatum, galois: Optional[GaloisActionData] = None) -> dict:
    galois = galois or GaloisActionData.trivial(rd.rank)
    out = {
        "rank": rd.rank,
        "roots": [list(v) for v in rd.roots],
        "coroots": [list(v) for v in rd.coroots],
        "simple": list(rd.simple),
        "galois": {
            "order": galois.order,
            "table": [list(row) for row in galois.table],
            "matrices": [[list(row) for row in m] for m in galois.matrices],
        },
    }
    if rd.name:
        out["name"] = rd.name
    return out


def datum_from_json(obj: dict) -> Tuple[BasedRootDatum, GaloisActionData]:
    rank = int(obj["rank"])
    rd = BasedRootDatum(rank, obj["roots"], obj["coroots"], obj["simple"], obj.get("name", ""))
    g = obj.get("galois")
    galois = (GaloisActionData(int(g["order"]), g["table"], g["matrices"]) if g
              else GaloisActionData.trivial(rank))
    return rd, galois
