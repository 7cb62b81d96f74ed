"""Exact coefficient fields: Gaussian rationals and prime fields, plus matrices over them.

Elements of ``F_p`` are plain ints in ``[0, p)``; Gaussian rationals are
:class:`GaussianRational`.  A :class:`CoefficientField` bundles the field
operations so matrix code can stay generic.
"""

from __future__ import annotations

import math
from random import Random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, FieldMismatch, InvalidArgument, NotASquare


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = GaussianRational(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"{self.re}+{self.im}i" if self.im > 0 else f"{self.re}{self.im}i"


I = GaussianRational(0, 1)


def fraction_sqrt(x: Fraction) -> Optional[Fraction]:
    """Non-negative rational square root, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def gaussian_sqrt(x: GaussianRational) -> Optional[GaussianRational]:
    """A square root inside Q(i), or None."""
    if not x:
        return GaussianRational(0)
    r = fraction_sqrt(x.norm())
    if r is None:
        return None
    c = fraction_sqrt((x.re + r) / 2)
    if c is not None and c != 0:
        return GaussianRational(c, x.im / (2 * c))
    d = fraction_sqrt((r - x.re) / 2)
    if d is not None and d != 0:
        return GaussianRational(x.im / (2 * d), d)
    return None


@dataclass(frozen=True)
class CoefficientField:
    """``kind`` is ``"gaussian"`` (Q(i)) or ``"prime"`` (F_p, p odd)."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "prime"):
            raise InvalidArgument(f"unknown field kind {self.kind!r}")
        if self.kind == "prime":
            p = self.p
            if p is None or p < 3 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise InvalidArgument(f"prime field needs an odd prime, got {p}")

    @classmethod
    def gaussian(cls) -> "CoefficientField":
        return cls("gaussian")

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls("prime", p)

    def __str__(self):
        return "Q(i)" if self.kind == "gaussian" else f"F_{self.p}"

    # elements

    def elt(self, x):
        if self.kind == "prime":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return GaussianRational.coerce(x)

    def zero(self):
        return self.elt(0)

    def one(self):
        return self.elt(1)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "prime" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "prime" else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "prime" else a * b

    def neg(self, a):
        return (-a) % self.p if self.kind == "prime" else -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.kind == "prime" else a.inverse()

    def pow(self, a, e: int):
        if self.kind == "prime":
            return pow(a, e, self.p) if e >= 0 else pow(self.inv(a), -e, self.p)
        return a ** e

    def is_zero(self, a) -> bool:
        return a == 0 if self.kind == "prime" else not a

    def sqrt(self, a):
        """Some square root of ``a``; raises :class:`NotASquare`."""
        if self.kind == "prime":
            if a == 0:
                return 0
            from sympy.ntheory import sqrt_mod
            root = sqrt_mod(a, self.p)
            if root is None:
                raise NotASquare(f"{a} is not a square in {self}")
            return root
        root = gaussian_sqrt(a)
        if root is None:
            raise NotASquare(f"{a} is not a square in {self}")
        return root

    def is_positive(self, a) -> bool:
        """The sign convention that picks quotient representatives.

        ``F_p``: ``a`` in ``[1, (p-1)/2]``.  ``Q(i)``: the first nonzero of
        (real part, imaginary part) is positive.
        """
        if self.kind == "prime":
            return 1 <= a <= (self.p - 1) // 2
        return a.re > 0 or (a.re == 0 and a.im > 0)

    def random(self, rng: Random, nonzero: bool = False):
        while True:
            if self.kind == "prime":
                x = rng.randrange(self.p)
            else:
                x = GaussianRational(Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
                                     Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
            if not nonzero or not self.is_zero(x):
                return x

    def to_json(self, a):
        if self.kind == "prime":
            return a
        return [str(a.re), str(a.im)]

    def from_json(self, v):
        if self.kind == "prime":
            return int(v) % self.p
        return GaussianRational(Fraction(v[0]), Fraction(v[1]))

    # matrices

    def matrix(self, rows: Sequence[Sequence]) -> Tuple[tuple, ...]:
        return tuple(tuple(self.elt(x) for x in row) for row in rows)

    def identity(self, n: int):
        return tuple(tuple(self.one() if i == j else self.zero() for j in range(n))
                     for i in range(n))

    def scalar_matrix(self, c, n: int):
        return tuple(tuple(c if i == j else self.zero() for j in range(n)) for i in range(n))

    def diagonal(self, entries: Sequence):
        n = len(entries)
        return tuple(tuple(entries[i] if i == j else self.zero() for j in range(n))
                     for i in range(n))

    def matmul(self, a, b):
        if len(a[0]) != len(b):
            raise DimensionMismatch("matrix shapes do not compose")
        out = []
        for row in a:
            new = []
            for j in range(len(b[0])):
                acc = self.zero()
                for k, x in enumerate(row):
                    if not self.is_zero(x):
                        acc = self.add(acc, self.mul(x, b[k][j]))
                new.append(acc)
            out.append(tuple(new))
        return tuple(out)

    def scale(self, c, a):
        return tuple(tuple(self.mul(c, x) for x in row) for row in a)

    def transpose(self, a):
        return tuple(zip(*a))

    def inverse(self, a):
        n = len(a)
        m = [list(row) + [self.one() if i == j else self.zero() for j in range(n)]
             for i, row in enumerate(a)]
        for c in range(n):
            p = next((i for i in range(c, n) if not self.is_zero(m[i][c])), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[p] = m[p], m[c]
            inv = self.inv(m[c][c])
            m[c] = [self.mul(inv, x) for x in m[c]]
            for i in range(n):
                if i != c and not self.is_zero(m[i][c]):
                    f = m[i][c]
                    m[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(m[i], m[c])]
        return tuple(tuple(row[n:]) for row in m)

    def inverse_transpose(self, a):
        return self.transpose(self.inverse(a))

    def determinant(self, a):
        n = len(a)
        m = [list(row) for row in a]
        det = self.one()
        for c in range(n):
            p = next((i for i in range(c, n) if not self.is_zero(m[i][c])), None)
            if p is None:
                return self.zero()
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = self.neg(det)
            det = self.mul(det, m[c][c])
            inv = self.inv(m[c][c])
            for i in range(c + 1, n):
                if not self.is_zero(m[i][c]):
                    f = self.mul(m[i][c], inv)
                    m[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(m[i], m[c])]
        return det

    def random_invertible(self, rng: Random, n: int):
        while True:
            m = tuple(tuple(self.random(rng) for _ in range(n)) for _ in range(n))
            if not self.is_zero(self.determinant(m)):
                return m

    def check_same(self, other: "CoefficientField") -> None:
        if self != other:
            raise FieldMismatch(f"{self} vs {other}")
