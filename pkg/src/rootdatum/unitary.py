"""The group G_n, the C-group of a quasi-split unitary group, and the maps j, j'.

Elements are triples ``(g, mu, gamma)`` with ``gamma`` in ``{0, 1}``
(``1`` standing for complex conjugation ``c``).  Multiplication is
``(x, a)(y, b) = (x * a(y), ab)``, where ``c`` acts on

* G_n by ``(g, mu) -> (mu g^-t, mu)``,
* the C-group by ``(g, mu) -> (Phi g^-t Phi^-1, mu)``.

In the C-group ``(g, mu)`` is identified with ``(s g, -mu)``,
``s = (-1)^(n-1)``; the stored representative has ``mu`` positive in the
field's sign convention (:meth:`CoefficientField.is_positive`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional

from .errors import (ConstructionFailure, DimensionMismatch, FieldMismatch, FieldTooSmall,
                     InvalidArgument, NotASquare)
from .fields import CoefficientField


def phi_matrix(n: int, field: Optional[CoefficientField] = None):
    """Antidiagonal matrix with entries ``1, -1, 1, ...`` read from the top right."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    rows = tuple(tuple((-1) ** i if i + j == n - 1 else 0 for j in range(n)) for i in range(n))
    if field is None:
        return rows
    return field.matrix(rows)


def phi_identities_hold(n: int) -> bool:
    """``Phi^-1 = Phi^t = (-1)^(n-1) Phi``, checked over Q(i)."""
    f = CoefficientField.gaussian()
    phi = phi_matrix(n, f)
    s = f.elt((-1) ** (n - 1))
    return f.inverse(phi) == f.transpose(phi) == f.scale(s, phi)


def _sign(n: int) -> int:
    return (-1) ** (n - 1)


@dataclass(frozen=True)
class GnElement:
    field: CoefficientField
    n: int
    g: tuple
    mu: object
    gamma: int = 0

    def __post_init__(self):
        object.__setattr__(self, "g", self.field.matrix(self.g))
        object.__setattr__(self, "mu", self.field.elt(self.mu))
        _check_shape(self)

    def conj_action(self) -> "GnElement":
        """``c`` applied to the ``(g, mu)`` part."""
        f = self.field
        return GnElement(f, self.n, f.scale(self.mu, f.inverse_transpose(self.g)), self.mu, 0)


@dataclass(frozen=True)
class CGroupUnitaryElement:
    field: CoefficientField
    n: int
    g: tuple
    mu: object
    gamma: int = 0

    def __post_init__(self):
        f = self.field
        g, mu = f.matrix(self.g), f.elt(self.mu)
        if not f.is_zero(mu) and not f.is_positive(mu):
            g, mu = f.scale(f.elt(_sign(self.n)), g), f.neg(mu)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "mu", mu)
        _check_shape(self)

    def other_representative(self):
        """The non-canonical representative ``(s g, -mu)`` as a raw pair."""
        f = self.field
        return f.scale(f.elt(_sign(self.n)), self.g), f.neg(self.mu)

    def conj_action(self) -> "CGroupUnitaryElement":
        f = self.field
        phi = phi_matrix(self.n, f)
        g = f.matmul(f.matmul(phi, f.inverse_transpose(self.g)), f.inverse(phi))
        return CGroupUnitaryElement(f, self.n, g, self.mu, 0)


def _check_shape(x) -> None:
    if x.gamma not in (0, 1):
        raise InvalidArgument("gamma must be 0 or 1")
    if len(x.g) != x.n or any(len(row) != x.n for row in x.g):
        raise DimensionMismatch(f"g must be {x.n} x {x.n}")
    if x.field.is_zero(x.mu) or x.field.is_zero(x.field.determinant(x.g)):
        raise InvalidArgument("g and mu must be invertible")


def _check_pair(a, b) -> None:
    if type(a) is not type(b):
        raise InvalidArgument("elements of different groups")
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.n != b.n:
        raise DimensionMismatch(f"n={a.n} vs n={b.n}")


def multiply(a, b):
    _check_pair(a, b)
    f = a.field
    y = b.conj_action() if a.gamma else b
    return type(a)(f, a.n, f.matmul(a.g, y.g), f.mul(a.mu, y.mu), (a.gamma + b.gamma) % 2)


def identity_element(kind, field: CoefficientField, n: int):
    return kind(field, n, field.identity(n), field.one(), 0)


def inverse(x):
    """Inverse in the semidirect product."""
    f = x.field
    base = type(x)(f, x.n, f.inverse(x.g), f.inv(x.mu), 0)
    if x.gamma:
        # (h, c)^-1 = c^-1 h^-1 = (c(h^-1), c), as c is an involution
        inv = base.conj_action()
        return type(x)(f, x.n, inv.g, inv.mu, 1)
    return base


def random_element(kind, field: CoefficientField, n: int, rng: random.Random,
                   gamma: Optional[int] = None):
    g = field.random_invertible(rng, n)
    mu = field.random(rng, nonzero=True)
    return kind(field, n, g, mu, rng.randrange(2) if gamma is None else gamma)


# ---------------------------------------------------------------------------
# j, j', d


def _j_pair(f: CoefficientField, n: int, g, mu):
    scale = f.pow(mu, 1 - n)
    return f.scale(scale, g), f.pow(mu, 2 * (1 - n))


def j_map(x: CGroupUnitaryElement) -> GnElement:
    """``j((g, mu) c^e) = (g mu^(1-n), mu^(2(1-n))) (Phi, s)^e c^e``."""
    f, n = x.field, x.n
    g, mu = _j_pair(f, n, x.g, x.mu)
    # both representatives of the class must give the same answer
    if _j_pair(f, n, *x.other_representative()) != (g, mu):
        raise ConstructionFailure("j is not well defined on the quotient")
    out = GnElement(f, n, g, mu, 0)
    if x.gamma:
        out = multiply(out, j_of_c(f, n))
    return out


def j_of_c(field: CoefficientField, n: int) -> GnElement:
    """``j(1 x c) = (Phi, (-1)^(n-1)) x c``."""
    return GnElement(field, n, phi_matrix(n, field), field.elt(_sign(n)), 1)


def d(x: CGroupUnitaryElement):
    """The character ``(g, mu, gamma) -> mu^2``."""
    return x.field.mul(x.mu, x.mu)


def multiplier(x: GnElement):
    return x.mu


def j_prime(x: GnElement, lam, sqrt_choice=None) -> CGroupUnitaryElement:
    """``((h, nu), lam) -> (h r^(n-1), r)`` with ``r^2 = lam``.

    On the ``c`` component the map is extended through ``j(1 x c)``:
    ``(h, nu) c = (h Phi^-1, nu s)(Phi, s) c``.  The class of the result does
    not depend on the sign of ``r``; this is checked.
    """
    f, n = x.field, x.n
    lam = f.elt(lam)
    r = f.sqrt(lam) if sqrt_choice is None else f.elt(sqrt_choice)
    if f.mul(r, r) != lam:
        raise NotASquare("sqrt_choice does not square to lam")
    h = x.g
    if x.gamma:
        h = f.matmul(h, f.inverse(phi_matrix(n, f)))
    outs = []
    for root in (r, f.neg(r)):
        outs.append(CGroupUnitaryElement(f, n, f.scale(f.pow(root, n - 1), h), root, x.gamma))
    if outs[0] != outs[1]:
        raise ConstructionFailure("j' depends on the choice of square root")
    return outs[0]


def kernel_of_j(n: int, field: CoefficientField) -> List[CGroupUnitaryElement]:
    """Kernel of j, found among the pairs ``(mu^(n-1) I, mu)``.

    Needs ``p = 1 mod 2(n-1)`` so that the ``2(n-1)``-th roots of unity are
    in ``F_p``.
    """
    if n < 2:
        raise InvalidArgument("the kernel is only counted for n > 1")
    if field.kind != "prime":
        raise InvalidArgument("kernel enumeration runs over a prime field")
    if (field.p - 1) % (2 * (n - 1)):
        raise FieldTooSmall(f"need p = 1 mod {2 * (n - 1)}, got p = {field.p}")
    ident = identity_element(GnElement, field, n)
    found = set()
    for mu in range(1, field.p):
        g = field.scale(field.pow(mu, n - 1), field.identity(n))
        x = CGroupUnitaryElement(field, n, g, mu, 0)
        if j_map(x) == ident:
            found.add(x)
    return sorted(found, key=lambda e: (e.mu, e.g))


def round_trip(x: CGroupUnitaryElement) -> CGroupUnitaryElement:
    """``j'(j(x), d(x))``; equal to ``x`` by construction."""
    return j_prime(j_map(x), d(x))


def element_to_json(x) -> dict:
    f = x.field
    return {"field": str(f), "n": x.n, "gamma": x.gamma,
            "g": [[f.to_json(a) for a in row] for row in x.g], "mu": f.to_json(x.mu)}
