"""Exact integer lattice arithmetic.

Lattices are free modules ``Z^rank`` in their standard basis; sublattices are
images of explicit integer matrices.  Matrices are tuples of row tuples and
act on column vectors, so a :class:`LatticeMap` from ``Z^m`` to ``Z^n`` has an
``n x m`` matrix.  Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, TorsionCokernel

IntMatrix = Tuple[Tuple[int, ...], ...]
IntVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# small matrix helpers


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def zero_matrix(nrows: int, ncols: int) -> IntMatrix:
    return tuple((0,) * ncols for _ in range(nrows))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], ncols: Optional[int] = None) -> tuple:
    """Product of two matrices; works with ints or Fractions.

    ``ncols`` gives the column count of ``b`` when ``b`` has no rows.
    """
    p = ncols_of(b, ncols or 0)
    inner = len(b)
    return tuple(tuple(sum(row[t] * b[t][j] for t in range(inner)) for j in range(p))
                 for row in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise DimensionMismatch(f"vectors of length {len(x)} and {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def ncols_of(m: Sequence[Sequence], default: int = 0) -> int:
    return len(m[0]) if m else default


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def as_rational(v: Sequence) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def as_int_vector(v: Sequence) -> IntVector:
    if not is_integral(v):
        raise ValueError(f"vector {v} is not integral")
    return tuple(int(Fraction(x)) for x in v)


# ---------------------------------------------------------------------------
# normal forms


def smith_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None
                      ) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(u, d, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular and ``d`` is diagonal with non-negative
    entries satisfying ``d[0][0] | d[1][1] | ...``.  Pass ``ncols`` when ``m``
    has no rows.
    """
    nr = len(m)
    nc = ncols_of(m, ncols or 0)
    a = [list(row) for row in m]
    u = [list(row) for row in identity(nr)]
    v = [list(row) for row in identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(a), as_matrix(v)


def hermite_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None
                        ) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: return ``(h, u)`` with ``u @ m == h``.

    ``h`` is in row echelon form, pivots are positive and the entries above
    each pivot are reduced into ``[0, pivot)``.  Zero rows sit at the bottom.
    """
    nr = len(m)
    nc = ncols_of(m, ncols or 0)
    a = [list(row) for row in m]
    u = [list(row) for row in identity(nr)]
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        while True:
            rows = [i for i in range(r, nr) if a[i][c]]
            if not rows:
                break
            i0 = min(rows, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, nr):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if r < nr and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return as_matrix(a), as_matrix(u)


def lattice_basis(generators: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """HNF basis (as rows) of the lattice spanned by the given row vectors."""
    if not generators:
        return ()
    h, _ = hermite_normal_form(generators, dim)
    return tuple(row for row in h if any(row))


def integer_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Basis (rows, in HNF) of ``{x in Z^n : m x = 0}``."""
    nc = ncols_of(m, ncols or 0)
    u, d, v = smith_normal_form(m, nc)
    rank = sum(1 for i in range(min(len(d), nc)) if d[i][i])
    vt = transpose(v, nc)
    return lattice_basis(vt[rank:], nc)


def left_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Basis (rows, in HNF) of ``{w in Z^n : w^T m = 0}``."""
    nr = len(m)
    return integer_kernel(transpose(m, ncols), nr) if nr else ()


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None
                  ) -> Optional[Tuple[IntVector, IntMatrix]]:
    """Solve ``m x = b`` over the integers.

    Returns ``(x0, kernel_rows)`` describing every solution as ``x0`` plus an
    integer combination of the kernel rows, or ``None`` when no integer
    solution exists.
    """
    nc = ncols_of(m, ncols or 0)
    if len(b) != len(m):
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {len(m)}")
    u, d, v = smith_normal_form(m, nc)
    ub = matvec(u, b)
    y = [0] * nc
    for i, c in enumerate(ub):
        di = d[i][i] if i < nc else 0
        if di == 0:
            if c != 0:
                return None
        else:
            if c % di:
                return None
            y[i] = c // di
    x0 = matvec(v, y) if nc else ()
    return tuple(x0), integer_kernel(m, nc)


def solve_rational(m: Sequence[Sequence], b: Sequence) -> Optional[RationalVector]:
    """One rational solution of ``m x = b`` (free variables set to 0), or None."""
    nr = len(m)
    nc = ncols_of(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    if any(a[i][nc] != 0 for i in range(r, nr)):
        return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        x[c] = a[i][nc]
    return tuple(x)


def inverse_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a square integer matrix with determinant +-1."""
    n = len(m)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        x = solve_rational(m, e)
        if x is None or not is_integral(x):
            raise ValueError("matrix is not unimodular")
        cols.append(as_int_vector(x))
    return transpose(cols) if n else ()


def right_inverse(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Integer ``r`` with ``m @ r == I`` for a surjective map ``Z^n -> Z^k``."""
    nc = ncols_of(m, ncols or 0)
    k = len(m)
    u, d, v = smith_normal_form(m, nc)
    if any(d[i][i] != 1 for i in range(k)):
        raise ValueError("map is not surjective")
    # m = u^-1 [I 0] v^-1, so r = v [I; 0] u
    vk = tuple(row[:k] for row in v)
    return matmul(vk, u, k)


# ---------------------------------------------------------------------------
# lattice objects


@dataclass(frozen=True)
class Lattice:
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix of shape ``target.rank x source.rank``."""

    source: Lattice
    target: Lattice
    matrix: IntMatrix = field(default=())

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or any(len(row) != self.source.rank for row in m):
            raise DimensionMismatch(
                f"matrix shape does not match {self.target.rank}x{self.source.rank}")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], source_rank: Optional[int] = None
                    ) -> "LatticeMap":
        m = as_matrix(matrix)
        src = ncols_of(m, source_rank or 0) if m else (source_rank or 0)
        return cls(Lattice(src), Lattice(len(m)), m)

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls(Lattice(n), Lattice(n), identity(n))

    def __call__(self, v: Sequence):
        if len(v) != self.source.rank:
            raise DimensionMismatch(f"vector of length {len(v)} for source rank {self.source.rank}")
        return matvec(self.matrix, v)

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """``self o other``."""
        if other.target.rank != self.source.rank:
            raise DimensionMismatch("cannot compose maps with mismatched ranks")
        m = matmul(self.matrix, other.matrix, other.source.rank)
        return LatticeMap(other.source, self.target, m)

    @property
    def columns(self) -> IntMatrix:
        return transpose(self.matrix, self.source.rank)


@dataclass(frozen=True)
class FiniteAbelianInvariants:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``."""

    invariant_factors: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        ds = self.invariant_factors
        if any(d < 2 for d in ds) or any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"not an invariant factor chain: {ds}")

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def cokernel_invariants(f: LatticeMap) -> FiniteAbelianInvariants:
    """Invariants of ``target / image(f)``."""
    _, d, _ = smith_normal_form(f.matrix, f.source.rank)
    diag = [d[i][i] for i in range(min(f.target.rank, f.source.rank))]
    rank = sum(1 for x in diag if x)
    return FiniteAbelianInvariants(tuple(x for x in diag if x > 1), f.target.rank - rank)


def contains(v: Sequence, lattice: Optional[LatticeMap] = None, ambient_rank: Optional[int] = None
             ) -> bool:
    """Whether ``v`` is an integer combination of the generators of ``lattice``.

    ``lattice`` is the image of a map into ``Z^n``; ``None`` means the
    standard lattice ``Z^len(v)``.
    """
    if lattice is None:
        if ambient_rank is not None and ambient_rank != len(v):
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{ambient_rank}")
        return is_integral(v)
    if len(v) != lattice.target.rank:
        raise DimensionMismatch(f"vector of length {len(v)} in Z^{lattice.target.rank}")
    if not is_integral(v):
        return False
    return solve_integer(lattice.matrix, as_int_vector(v), lattice.source.rank) is not None


def pullback_lattice(f: LatticeMap, g: LatticeMap, modulo: Optional[LatticeMap] = None
                     ) -> Tuple[Lattice, LatticeMap, LatticeMap]:
    """Fiber product ``{(x, y) : f(x) = g(y)}``, optionally modulo ``image(modulo)``.

    The result lattice is given a basis (the HNF of the solution set) and the
    two projections are returned as maps out of it.
    """
    if f.target.rank != g.target.rank:
        raise DimensionMismatch("pullback requires a common target")
    a, b, c = f.source.rank, g.source.rank, f.target.rank
    extra = modulo.source.rank if modulo is not None else 0
    if modulo is not None and modulo.target.rank != c:
        raise DimensionMismatch("modulus must map into the common target")
    rows = []
    for i in range(c):
        row = list(f.matrix[i]) + [-x for x in g.matrix[i]]
        if modulo is not None:
            row += [-x for x in modulo.matrix[i]]
        rows.append(row)
    kernel = integer_kernel(rows, a + b + extra)
    basis = lattice_basis([k[:a + b] for k in kernel], a + b)
    cols = transpose(basis, a + b)  # (a+b) x rank
    n = len(basis)
    p1 = LatticeMap(Lattice(n), f.source, cols[:a] if a else ())
    p2 = LatticeMap(Lattice(n), g.source, cols[a:] if b else ())
    return Lattice(n), p1, p2


def pushout_lattice(f: LatticeMap, g: LatticeMap) -> Tuple[Lattice, LatticeMap, LatticeMap]:
    """Quotient of ``target(f) + target(g)`` by the anti-diagonal image of the source.

    Raises :class:`TorsionCokernel` if the quotient is not free.  The
    coordinates on the quotient are the HNF basis of the annihilator of the
    anti-diagonal image, which makes the result deterministic.
    """
    if f.source.rank != g.source.rank:
        raise DimensionMismatch("pushout requires a common source")
    a, b, k = f.target.rank, g.target.rank, f.source.rank
    h = tuple(f.matrix) + tuple(tuple(-x for x in row) for row in g.matrix)
    inv = cokernel_invariants(LatticeMap(Lattice(k), Lattice(a + b), h))
    if inv.invariant_factors:
        raise TorsionCokernel(f"pushout has torsion {inv.invariant_factors}")
    q = left_kernel(h, k) if k else identity(a + b)
    n = len(q)
    i1 = LatticeMap(f.target, Lattice(n), tuple(row[:a] for row in q))
    i2 = LatticeMap(g.target, Lattice(n), tuple(row[a:] for row in q))
    return Lattice(n), i1, i2


def affine_points_in_box(x0: Sequence[int], kernel: Sequence[Sequence[int]], bound: int
                         ) -> List[IntVector]:
    """All points of ``x0 + span_Z(kernel)`` with every coordinate in ``[-bound, bound]``.

    The kernel is put in Hermite form so each basis row owns a pivot column
    that later rows vanish on; this pins down the range of each coefficient
    in turn.  Output is sorted.
    """
    n = len(x0)
    basis = lattice_basis(kernel, n) if kernel else ()
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    out = []

    def rec(i, x):
        if i == len(basis):
            if all(-bound <= c <= bound for c in x):
                out.append(tuple(x))
            return
        p, row = pivots[i], basis[i]
        lo = -((x[p] + bound) // row[p])  # ceil((-bound - x[p]) / row[p])
        hi = (bound - x[p]) // row[p]
        for t in range(lo, hi + 1):
            rec(i + 1, [a + t * b for a, b in zip(x, row)])

    rec(0, list(x0))
    return sorted(out)
