"""Archimedean parameters: L- and C-algebraicity, twists, Hodge-Tate bookkeeping.

A parameter is a pair ``(lambda_sigma, lambda_tau)`` of rational vectors in
``X*(T) (x) Q`` whose difference is integral.  L-algebraic means
``lambda_sigma`` is integral, C-algebraic means ``lambda_sigma - delta`` is.
Only rational parameters are modelled; a generic complex parameter is never
algebraic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import datum as _datum
from .datum import BasedRootDatum, GaloisActionData, weyl_group
from .errors import (ConstructionFailure, DimensionMismatch, InvalidArgument, InvalidShift,
                     NonDominant, NotAlgebraic, RelationViolation)
from .fields import CoefficientField, GaussianRational, I
from .jsonio import fmt_vector, parse_vector
from .lattice import LatticeMap, RationalVector, dot, is_integral, matvec

PLACES = ("real", "complex")


def _rat(v) -> RationalVector:
    return tuple(x if type(x) is Fraction else Fraction(x) for x in v)


def _act_rational(w, v: RationalVector) -> RationalVector:
    # clear denominators so the product runs on ints
    den = math.lcm(*(x.denominator for x in v))
    ints = [x.numerator * (den // x.denominator) for x in v]
    return tuple(Fraction(y, den) for y in matvec(w, ints))


def _congruent_mod_1(a: Fraction, b: Fraction) -> bool:
    return (a.numerator * b.denominator - b.numerator * a.denominator) % (
        a.denominator * b.denominator) == 0


@dataclass(frozen=True)
class InfinitesimalParameter:
    lambda_sigma: RationalVector
    lambda_tau: RationalVector
    place: str = "real"

    def __post_init__(self):
        object.__setattr__(self, "lambda_sigma", _rat(self.lambda_sigma))
        object.__setattr__(self, "lambda_tau", _rat(self.lambda_tau))
        if self.place not in PLACES:
            raise InvalidArgument(f"place must be one of {PLACES}")
        if len(self.lambda_sigma) != len(self.lambda_tau):
            raise DimensionMismatch("lambda_sigma and lambda_tau differ in length")
        if not all(_congruent_mod_1(a, b) for a, b in zip(self.lambda_sigma, self.lambda_tau)):
            raise InvalidArgument("lambda_sigma - lambda_tau must be integral")

    @classmethod
    def diagonal(cls, lam: Sequence, place: str = "real") -> "InfinitesimalParameter":
        return cls(lam, lam, place)

    @property
    def rank(self) -> int:
        return len(self.lambda_sigma)

    def swapped(self) -> "InfinitesimalParameter":
        return InfinitesimalParameter(self.lambda_tau, self.lambda_sigma, self.place)

    def act(self, w) -> "InfinitesimalParameter":
        return InfinitesimalParameter(_act_rational(w, self.lambda_sigma),
                                      _act_rational(w, self.lambda_tau), self.place)

    def shifted(self, v: Sequence) -> "InfinitesimalParameter":
        v = _rat(v)
        return InfinitesimalParameter(tuple(a + b for a, b in zip(self.lambda_sigma, v)),
                                      tuple(a + b for a, b in zip(self.lambda_tau, v)),
                                      self.place)

    def to_json(self) -> dict:
        return {"lambda_sigma": fmt_vector(self.lambda_sigma),
                "lambda_tau": fmt_vector(self.lambda_tau), "place": self.place}

    @classmethod
    def from_json(cls, obj: dict) -> "InfinitesimalParameter":
        return cls(parse_vector(obj["lambda_sigma"]), parse_vector(obj["lambda_tau"]),
                   obj.get("place", "real"))


def _check_rank(p: InfinitesimalParameter, rd: BasedRootDatum) -> None:
    if p.rank != rd.rank:
        raise DimensionMismatch(f"parameter of length {p.rank} for rank {rd.rank}")


def canonicalize(p: InfinitesimalParameter, rd: BasedRootDatum) -> InfinitesimalParameter:
    """Lexicographically least point of the diagonal Weyl orbit.

    At a complex place the pair is unordered, so both orders compete.
    """
    _check_rank(p, rd)
    best = None
    for w in weyl_group(rd):
        q = p.act(w)
        cands = [q] if p.place == "real" else [q, q.swapped()]
        for c in cands:
            key = (c.lambda_sigma, c.lambda_tau)
            if best is None or key < best[0]:
                best = (key, c)
    return best[1]


def is_l_algebraic(p: InfinitesimalParameter, rd: BasedRootDatum) -> bool:
    _check_rank(p, rd)
    # lambda_sigma - lambda_tau is integral, so either one decides
    return is_integral(p.lambda_sigma)


def is_c_algebraic(p: InfinitesimalParameter, rd: BasedRootDatum) -> bool:
    _check_rank(p, rd)
    delta = _datum.half_sum_positive_roots(rd)
    return all(_congruent_mod_1(a, d) for a, d in zip(p.lambda_sigma, delta))


def twist_parameter(p: InfinitesimalParameter, shift: Sequence, rd: BasedRootDatum,
                    galois: Optional[GaloisActionData] = None,
                    theta: Optional[Sequence[int]] = None) -> InfinitesimalParameter:
    """Shift both components by a central half-integral vector.

    With ``theta`` supplied and ``shift == theta - delta`` the result is
    checked to be L-algebraic exactly when ``p`` is C-algebraic.
    """
    _check_rank(p, rd)
    shift = _rat(shift)
    if len(shift) != rd.rank:
        raise DimensionMismatch("shift has the wrong length")
    if not is_integral(2 * x for x in shift):
        raise InvalidShift("shift must lie in (1/2) X*")
    if any(dot(shift, c) for c in rd.simple_coroots):
        raise InvalidShift("shift pairs nontrivially with a simple coroot")
    for m in (galois.matrices if galois else ()):
        if matvec(m, shift) != shift:
            raise InvalidShift("shift is not Galois-stable")
    out = p.shifted(shift)
    if theta is not None:
        delta = _datum.half_sum_positive_roots(rd)
        if shift == tuple(t - d for t, d in zip(theta, delta)):
            if is_c_algebraic(p, rd) != is_l_algebraic(out, rd):
                raise ConstructionFailure("theta - delta twist does not swap the notions")
    return out


def twist_by_theta(p: InfinitesimalParameter, rd: BasedRootDatum, theta: Sequence[int],
                   galois: Optional[GaloisActionData] = None) -> InfinitesimalParameter:
    delta = _datum.half_sum_positive_roots(rd)
    return twist_parameter(p, tuple(t - d for t, d in zip(theta, delta)), rd, galois, theta)


def infchar_of_algebraic_rep(mu: Sequence[int], rd: BasedRootDatum) -> InfinitesimalParameter:
    """Infinitesimal character ``mu + delta`` of the algebraic representation of highest weight ``mu``."""
    mu = _rat(mu)
    if len(mu) != rd.rank:
        raise DimensionMismatch("weight has the wrong length")
    if not is_integral(mu) or any(dot(mu, c) < 0 for c in rd.simple_coroots):
        raise NonDominant(f"{[str(x) for x in mu]} is not a dominant integral weight")
    delta = _datum.half_sum_positive_roots(rd)
    p = InfinitesimalParameter.diagonal(tuple(a + d for a, d in zip(mu, delta)))
    if not is_c_algebraic(p, rd):
        raise ConstructionFailure("infinitesimal character is not C-algebraic")
    return p


def hodge_tate_prediction(p: InfinitesimalParameter, rd: BasedRootDatum, package=None
                          ) -> Tuple[Tuple[int, ...], ...]:
    """Predicted Hodge-Tate cocharacter as a sorted Weyl orbit of integer vectors.

    Without ``package`` this is the orbit of ``lambda_sigma`` (needs
    L-algebraic).  With an extension package from ``build_g_tilde`` the
    C-group recipe is used: the orbit in ``X*(T~)`` of the image of
    ``lambda_sigma`` plus ``xi/2`` (needs C-algebraic).
    """
    _check_rank(p, rd)
    if package is None:
        if not is_l_algebraic(p, rd):
            raise NotAlgebraic("parameter is not L-algebraic")
        vec, group = p.lambda_sigma, rd
    else:
        if not is_c_algebraic(p, rd):
            raise NotAlgebraic("parameter is not C-algebraic")
        img = matvec(package.projection.matrix, p.lambda_sigma)
        vec = tuple(a + Fraction(x, 2) for a, x in zip(img, package.xi))
        group = package.g_tilde
        if not is_integral(vec):
            raise ConstructionFailure("C-group Hodge-Tate vector is not integral")
    orbit = {tuple(int(x) for x in matvec(w, vec)) for w in weyl_group(group)}
    return tuple(sorted(orbit))


def transfer_parameter(p: InfinitesimalParameter, dual_hom: LatticeMap) -> InfinitesimalParameter:
    """Push both components forward along a map of dual-torus cocharacter lattices."""
    if p.rank != dual_hom.source.rank:
        raise DimensionMismatch("parameter does not match the source of the map")
    out = InfinitesimalParameter(dual_hom(p.lambda_sigma), dual_hom(p.lambda_tau), p.place)
    if is_integral(p.lambda_sigma) and not is_integral(out.lambda_sigma):
        raise ConstructionFailure("transfer lost integrality")
    return out


# ---------------------------------------------------------------------------
# the element alpha_infinity


@dataclass(frozen=True)
class ConjugationElement:
    """Matrices for ``lambda_sigma(i)``, ``lambda_tau(i)`` and ``r(j)`` over Q(i)."""

    lambda_sigma_i: tuple
    lambda_tau_i: tuple
    r_j: tuple

    def __post_init__(self):
        f = CoefficientField.gaussian()
        for name in ("lambda_sigma_i", "lambda_tau_i", "r_j"):
            object.__setattr__(self, name, f.matrix(getattr(self, name)))
        n = len(self.r_j)
        if any(len(m) != n or any(len(row) != n for row in m)
               for m in (self.lambda_sigma_i, self.lambda_tau_i, self.r_j)):
            raise DimensionMismatch("matrices must be square of one size")

    @classmethod
    def from_weights(cls, lambda_sigma: Sequence[int], lambda_tau: Sequence[int], r_j
                     ) -> "ConjugationElement":
        """Diagonal torus realisation: ``lambda(i) = diag(i^lambda_k)``."""
        f = CoefficientField.gaussian()
        if not (is_integral(lambda_sigma) and is_integral(lambda_tau)):
            raise InvalidArgument("diagonal realisation needs integral weights")
        ls = f.diagonal([I ** int(x) for x in lambda_sigma])
        lt = f.diagonal([I ** int(x) for x in lambda_tau])
        return cls(ls, lt, r_j)

    def swapped(self) -> "ConjugationElement":
        return ConjugationElement(self.lambda_tau_i, self.lambda_sigma_i, self.r_j)


@dataclass(frozen=True)
class ConjugationResult:
    alpha: tuple
    order_divides_two: bool
    swap_invariant: bool
    sign_invariant: bool


def _weil_relations(ce: ConjugationElement):
    f = CoefficientField.gaussian()
    mm = f.matmul
    ls, lt, r = ce.lambda_sigma_i, ce.lambda_tau_i, ce.r_j
    if mm(ls, lt) != mm(lt, ls):
        raise RelationViolation("lambda_sigma(i) and lambda_tau(i) do not commute")
    if mm(ls, r) != mm(r, lt):
        raise RelationViolation("lambda_sigma(i) r(j) != r(j) lambda_tau(i)")
    minus_one = mm(mm(ls, ls), mm(lt, lt))
    if mm(r, r) != minus_one:
        raise RelationViolation("r(j)^2 != lambda_sigma(-1) lambda_tau(-1)")


def conjugation_element(ce: ConjugationElement) -> ConjugationResult:
    """``alpha = lambda_sigma(i) lambda_tau(i) r(j)`` with its order and invariance checks.

    The checks: ``alpha^2 = 1``; swapping sigma and tau gives the same
    matrix; conjugating by ``lambda_sigma(-1)`` gives the element built from
    ``-i`` instead of ``i``.
    """
    f = CoefficientField.gaussian()
    mm = f.matmul
    _weil_relations(ce)
    ls, lt, r = ce.lambda_sigma_i, ce.lambda_tau_i, ce.r_j
    n = len(r)
    alpha = mm(mm(ls, lt), r)
    order2 = mm(alpha, alpha) == f.identity(n)
    _weil_relations(ce.swapped())
    swapped = mm(mm(lt, ls), r)
    ls_m1 = mm(ls, ls)
    conj = mm(mm(ls_m1, alpha), f.inverse(ls_m1))
    cube = lambda m: mm(mm(m, m), m)
    minus_i = mm(mm(cube(ls), cube(lt)), r)
    return ConjugationResult(alpha, order2, swapped == alpha, conj == minus_i)


def random_conjugation_fixture(rng: random.Random, n: int, spread: int = 3) -> ConjugationElement:
    """A random valid diagonal fixture.

    ``r(j)`` is monomial: a random involution ``pi`` times a diagonal ``D``,
    and ``lambda_tau = lambda_sigma o pi``.  ``D`` is chosen so that
    ``r(j)^2 = lambda_sigma(-1) lambda_tau(-1)``.
    """
    f = CoefficientField.gaussian()
    lam = [rng.randint(-spread, spread) for _ in range(n)]
    idx = list(range(n))
    rng.shuffle(idx)
    pi = list(range(n))
    k = 0
    while k + 1 < len(idx):
        if rng.random() < 0.6:
            a, b = idx[k], idx[k + 1]
            pi[a], pi[b] = b, a
        k += 2
    lam_tau = [lam[pi[i]] for i in range(n)]
    units = [GaussianRational(1), GaussianRational(-1), I, -I, GaussianRational(2),
             GaussianRational(Fraction(1, 3)), GaussianRational(1, 1)]
    d = [None] * n
    for a in range(n):
        b = pi[a]
        if b == a:
            d[a] = GaussianRational(rng.choice((1, -1)))
        elif d[a] is None:
            d[a] = rng.choice(units)
            d[b] = GaussianRational((-1) ** ((lam[a] + lam_tau[a]) % 2)) / d[a]
    # r = P_pi D with P_pi e_k = e_pi(k)
    r = tuple(tuple(d[j] if pi[j] == i else f.zero() for j in range(n)) for i in range(n))
    return ConjugationElement.from_weights(lam, lam_tau, r)
