"""Unramified Satake parameters with exact half-integral powers of p.

Numbers are ``c * p^(e/2)`` (:class:`SqrtPScalar`); a conjugacy class in
GL_n is recorded by its characteristic polynomial.  Frobenius is geometric
throughout.  The arithmetic convention is reachable through
:func:`arithmetic_frobenius`, which flips the p-power of every eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import (ConstructionFailure, DimensionMismatch, InvalidArgument, ParityMismatch,
                     UnknownPrime)
from .jsonio import fmt_rational, parse_rational

HOLOMORPHIC = "holomorphic"
MAASS = "maass_langlands_tunnell"
KINDS = (HOLOMORPHIC, MAASS)


def _valuation(x: int, p: int) -> int:
    v = 0
    while x and x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class SqrtPScalar:
    """The number ``coeff * prime^(halfexp/2)``.

    Stored canonically: ``coeff`` is a p-adic unit (all powers of p live in
    ``halfexp``) and zero has ``halfexp == 0``.
    """

    prime: int
    coeff: Fraction
    halfexp: int = 0

    def __post_init__(self):
        c = Fraction(self.coeff)
        e = int(self.halfexp)
        if c == 0:
            e = 0
        else:
            v = _valuation(c.numerator, self.prime) - _valuation(c.denominator, self.prime)
            c = c / Fraction(self.prime) ** v
            e += 2 * v
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "halfexp", e)

    @classmethod
    def power(cls, p: int, exponent) -> "SqrtPScalar":
        """``p^exponent`` for a half-integer ``exponent``."""
        e2 = Fraction(exponent) * 2
        if e2.denominator != 1:
            raise InvalidArgument(f"exponent {exponent} is not a half-integer")
        return cls(p, Fraction(1), int(e2))

    @classmethod
    def rational(cls, p: int, x) -> "SqrtPScalar":
        return cls(p, Fraction(x), 0)

    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        """Whether the value lies in Q, i.e. the p-exponent is an integer."""
        return self.halfexp % 2 == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ParityMismatch(f"{self} is irrational")
        return self.coeff * Fraction(self.prime) ** (self.halfexp // 2)

    def _same_prime(self, other: "SqrtPScalar") -> None:
        if self.prime != other.prime:
            raise InvalidArgument(f"primes differ: {self.prime} vs {other.prime}")

    def _coerce(self, other) -> "SqrtPScalar":
        if isinstance(other, SqrtPScalar):
            self._same_prime(other)
            return other
        return SqrtPScalar(self.prime, Fraction(other), 0)

    def __mul__(self, other):
        o = self._coerce(other)
        return SqrtPScalar(self.prime, self.coeff * o.coeff, self.halfexp + o.halfexp)

    __rmul__ = __mul__

    def inverse(self) -> "SqrtPScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return SqrtPScalar(self.prime, 1 / self.coeff, -self.halfexp)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return SqrtPScalar(self.prime, self.coeff ** n, self.halfexp * n)

    def __neg__(self):
        return SqrtPScalar(self.prime, -self.coeff, self.halfexp)

    def __add__(self, other):
        o = self._coerce(other)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if (self.halfexp - o.halfexp) % 2:
            raise ParityMismatch(f"cannot add {self} and {o}")
        e = min(self.halfexp, o.halfexp)
        p = Fraction(self.prime)
        c = self.coeff * p ** ((self.halfexp - e) // 2) + o.coeff * p ** ((o.halfexp - e) // 2)
        return SqrtPScalar(self.prime, c, e)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def arithmetic_frobenius(self) -> "SqrtPScalar":
        """Flip the p-power: ``c p^(e/2) -> c p^(-e/2)``."""
        return SqrtPScalar(self.prime, self.coeff, -self.halfexp)

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.halfexp == 0:
            return str(self.coeff)
        return f"{self.coeff}*{self.prime}^({Fraction(self.halfexp, 2)})"

    def to_json(self) -> dict:
        return {"p": self.prime, "c": fmt_rational(self.coeff), "e2": self.halfexp}

    @classmethod
    def from_json(cls, obj: dict) -> "SqrtPScalar":
        return cls(int(obj["p"]), parse_rational(obj["c"]), int(obj["e2"]))


# ---------------------------------------------------------------------------
# conjugacy classes in GL_n


@dataclass(frozen=True)
class SatakeParamGL:
    """Monic characteristic polynomial ``X^n + c_{n-1} X^{n-1} + ... + c_0``.

    ``coeffs`` lists ``c_{n-1}, ..., c_0``.  Eigenvalues are kept when known.
    """

    n: int
    coeffs: Tuple[SqrtPScalar, ...]
    eigenvalues: Optional[Tuple[SqrtPScalar, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise DimensionMismatch(f"expected {self.n} coefficients")
        if self.n and self.coeffs[-1].is_zero():
            raise InvalidArgument("constant coefficient must be nonzero")

    @property
    def prime(self) -> int:
        return self.coeffs[0].prime

    @classmethod
    def from_eigenvalues(cls, eigs: Sequence[SqrtPScalar]) -> "SatakeParamGL":
        p = eigs[0].prime
        poly = [SqrtPScalar(p, 1)]  # coefficients high degree first
        for lam in eigs:
            new = poly + [SqrtPScalar(p, 0)]
            for i in range(1, len(new)):
                new[i] = new[i] - lam * poly[i - 1]
            poly = new
        return cls(len(eigs), tuple(poly[1:]), tuple(eigs))

    @property
    def trace(self) -> SqrtPScalar:
        return -self.coeffs[0]

    @property
    def det(self) -> SqrtPScalar:
        return self.coeffs[-1] if self.n % 2 == 0 else -self.coeffs[-1]

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [c.to_json() for c in self.coeffs]}


def twist_eigenvalues(eigs: Sequence[SqrtPScalar], xi_cochar: Sequence[int], s, q: int
                      ) -> Tuple[SqrtPScalar, ...]:
    """Multiply eigenvalue ``k`` by ``q^(-s * xi_k)``."""
    if len(eigs) != len(xi_cochar):
        raise DimensionMismatch("xi does not match the number of eigenvalues")
    s = Fraction(s)
    return tuple(e * SqrtPScalar.power(q, -s * x) for e, x in zip(eigs, xi_cochar))


def unramified_twist(param, xi_cochar: Sequence[int], s, q: int):
    """Twist by the unramified character ``|xi|^s``.

    ``param`` is either a sequence of torus eigenvalues or a
    :class:`SatakeParamGL`; for the latter ``xi`` must be a multiple of the
    determinant, and the coefficient of ``X^(n-i)`` picks up ``q^(-s c i)``.
    """
    if not isinstance(param, SatakeParamGL):
        return twist_eigenvalues(param, xi_cochar, s, q)
    if len(xi_cochar) != param.n:
        raise DimensionMismatch("xi does not match the rank")
    if len(set(xi_cochar)) > 1:
        raise InvalidArgument("a characteristic polynomial can only be twisted by a power of det")
    c = xi_cochar[0] if param.n else 0
    s = Fraction(s)
    coeffs = tuple(a * SqrtPScalar.power(q, -s * c * (i + 1)) for i, a in enumerate(param.coeffs))
    eigs = None
    if param.eigenvalues is not None:
        eigs = twist_eigenvalues(param.eigenvalues, xi_cochar, s, q)
    return SatakeParamGL(param.n, coeffs, eigs)


def arithmetic_frobenius(param):
    """Switch Frobenius convention: flip the p-power of every eigenvalue."""
    if isinstance(param, SatakeParamGL):
        if param.eigenvalues is None:
            raise InvalidArgument("eigenvalues are needed to switch convention")
        return SatakeParamGL.from_eigenvalues([e.arithmetic_frobenius() for e in param.eigenvalues])
    return tuple(e.arithmetic_frobenius() for e in param)


def integral_exponent_test(values: Sequence[SqrtPScalar]) -> bool:
    """True iff every nonzero value has an integral p-exponent.

    This is the computable stand-in for "lies in one number field for all p":
    a value like ``(p+1)/sqrt(p)`` at infinitely many primes rules that out.
    """
    if not values:
        raise InvalidArgument("need at least one value")
    return all(v.is_zero() or v.is_rational for v in values)


@dataclass(frozen=True)
class DefinedOver:
    coeffs_in_field: bool
    companion: Optional[Tuple[Tuple[Fraction, ...], ...]]


def _charpoly_of(m) -> Tuple[Fraction, ...]:
    """Coefficients ``c_{n-1}, ..., c_0`` of ``det(X - m)`` (Faddeev-LeVerrier)."""
    n = len(m)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    coeffs = []
    c = Fraction(1)
    for k in range(1, n + 1):
        # mk = m (mk + c I)
        inner = [[mk[i][j] + c * ident[i][j] for j in range(n)] for i in range(n)]
        mk = [[sum(m[i][t] * inner[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    return tuple(coeffs)


def defined_over_equivalence_gln(param: SatakeParamGL, field_spec: str = "Q") -> DefinedOver:
    """Whether the class is defined over Q, with a rational companion matrix when it is."""
    if field_spec != "Q":
        raise InvalidArgument("only the field Q is supported")
    if not all(c.is_zero() or c.is_rational for c in param.coeffs):
        return DefinedOver(False, None)
    n = param.n
    cs = [c.to_fraction() for c in param.coeffs]  # c_{n-1} .. c_0
    low = list(reversed(cs))  # c_0 .. c_{n-1}
    comp = tuple(tuple(Fraction(-low[i]) if j == n - 1 else Fraction(int(i == j + 1))
                       for j in range(n)) for i in range(n))
    if _charpoly_of(comp) != tuple(cs):
        raise ConstructionFailure("companion matrix has the wrong characteristic polynomial")
    return DefinedOver(True, comp)


# ---------------------------------------------------------------------------
# the GL_2 families


@dataclass(frozen=True)
class GL2FamilySpec:
    """``pi_s = pi (x) |det|^s`` for a holomorphic form of weight ``k`` or a Maass form
    with Laplace eigenvalue 1/4 (the Artin-type case), with Hecke data ``(p, a_p)``."""

    kind: str
    s: Fraction
    k: Optional[int] = None
    hecke: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"kind must be one of {KINDS}")
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "hecke",
                           tuple((int(p), Fraction(a)) for p, a in self.hecke))
        if self.kind == HOLOMORPHIC:
            if self.k is None or int(self.k) != self.k or self.k < 2:
                raise InvalidArgument("holomorphic forms need an integer weight k >= 2")
            object.__setattr__(self, "k", int(self.k))
        elif self.k is not None:
            raise InvalidArgument("Maass forms take no weight")
        if len({p for p, _ in self.hecke}) != len(self.hecke):
            raise InvalidArgument("repeated prime in Hecke data")

    @property
    def half_integral(self) -> bool:
        return (2 * self.s).denominator == 1

    def a_p(self, p: int) -> Fraction:
        for q, a in self.hecke:
            if q == p:
                return a
        raise UnknownPrime(p)

    def lambda_sigma(self) -> Tuple[Fraction, Fraction]:
        """Infinitesimal parameter on the diagonal torus of GL_2."""
        s = self.s
        if self.kind == HOLOMORPHIC:
            return (s + self.k - Fraction(3, 2), s - Fraction(1, 2))
        return (s, s)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "s": fmt_rational(self.s),
               "hecke": [[p, fmt_rational(a)] for p, a in self.hecke]}
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GL2FamilySpec":
        return cls(obj["kind"], parse_rational(obj["s"]), obj.get("k"),
                   tuple((int(p), parse_rational(a)) for p, a in obj.get("hecke", ())))


def _require_half_integral(spec: GL2FamilySpec) -> None:
    if not spec.half_integral:
        raise InvalidArgument("s must be a half-integer for exact Satake arithmetic")


def hecke_eigenvalues_gl2(spec: GL2FamilySpec, p: int) -> Tuple[SqrtPScalar, SqrtPScalar]:
    """Eigenvalues of ``T_p`` and ``S_p``.

    Holomorphic: ``(a_p p^(2-k-s), p^(2-k-2s))``.
    Maass: ``(a_p p^(1/2-s), p^(-2s))``.
    """
    _require_half_integral(spec)
    a, s = spec.a_p(p), spec.s
    if spec.kind == HOLOMORPHIC:
        k = spec.k
        return SqrtPScalar.power(p, 2 - k - s) * a, SqrtPScalar.power(p, 2 - k - 2 * s)
    return SqrtPScalar.power(p, Fraction(1, 2) - s) * a, SqrtPScalar.power(p, -2 * s)


def satake_charpoly_gl2(spec: GL2FamilySpec, p: int) -> SatakeParamGL:
    """Holomorphic: ``X^2 - a_p p^(3/2-k-s) X + p^(2-k-2s)``.
    Maass: ``X^2 - a_p p^(-s) X + p^(-2s)``."""
    _require_half_integral(spec)
    a, s = spec.a_p(p), spec.s
    if spec.kind == HOLOMORPHIC:
        k = spec.k
        mid = SqrtPScalar.power(p, Fraction(3, 2) - k - s) * a
        const = SqrtPScalar.power(p, 2 - k - 2 * s)
    else:
        mid = SqrtPScalar.power(p, -s) * a
        const = SqrtPScalar.power(p, -2 * s)
    param = SatakeParamGL(2, (-mid, const))
    # T_p = p^(1/2) trace and S_p = det
    tp, sp = hecke_eigenvalues_gl2(spec, p)
    if tp != SqrtPScalar.power(p, Fraction(1, 2)) * param.trace or sp != param.det:
        raise ConstructionFailure("Hecke eigenvalues and Satake parameter disagree")
    return param


FLAG_KEYS = ("L_algebraic", "C_algebraic", "L_arithmetic", "C_arithmetic")


def _closed_form(spec: GL2FamilySpec) -> Dict[str, bool]:
    if not spec.half_integral:
        return dict.fromkeys(FLAG_KEYS, False)
    integer = spec.s.denominator == 1
    l_side = (not integer) if spec.kind == HOLOMORPHIC else integer
    return {"L_algebraic": l_side, "L_arithmetic": l_side,
            "C_algebraic": not l_side, "C_arithmetic": not l_side}


def classify_gl2_family(spec: GL2FamilySpec) -> dict:
    """The four flags from the closed forms, cross-checked.

    The algebraicity flags are recomputed from ``lambda_sigma`` through the
    algebraicity predicates on GL_2.  When some ``a_p`` is nonzero the
    arithmetic flags are recomputed from the Satake data: L-arithmetic from
    the characteristic polynomial coefficients, C-arithmetic from the Hecke
    eigenvalues.  Any disagreement raises :class:`ConstructionFailure`.
    """
    from .algebraicity import InfinitesimalParameter, is_c_algebraic, is_l_algebraic
    from .datum import standard

    flags = _closed_form(spec)
    checks = {"lambda": False, "satake": None}
    if not spec.half_integral:
        return {**flags, "note": "NonRational", "checks": checks}
    gl2, _ = standard("GL", 2)
    lam = InfinitesimalParameter.diagonal(spec.lambda_sigma())
    if (is_l_algebraic(lam, gl2), is_c_algebraic(lam, gl2)) != (flags["L_algebraic"],
                                                                flags["C_algebraic"]):
        raise ConstructionFailure(f"closed form and infinitesimal parameter disagree for {spec}")
    checks["lambda"] = True
    if any(a != 0 for _, a in spec.hecke):
        coeffs, heckes = [], []
        for p, _ in spec.hecke:
            coeffs.extend(satake_charpoly_gl2(spec, p).coeffs)
            heckes.extend(hecke_eigenvalues_gl2(spec, p))
        if (integral_exponent_test(coeffs), integral_exponent_test(heckes)) != (
                flags["L_arithmetic"], flags["C_arithmetic"]):
            raise ConstructionFailure(f"closed form and Satake data disagree for {spec}")
        checks["satake"] = True
    return {**flags, "note": "", "checks": checks}


def trivial_rep_gl2(p: int) -> SatakeParamGL:
    """Satake parameter of the trivial representation: eigenvalues ``p^(1/2), p^(-1/2)``."""
    return SatakeParamGL.from_eigenvalues([SqrtPScalar.power(p, Fraction(1, 2)),
                                           SqrtPScalar.power(p, Fraction(-1, 2))])
