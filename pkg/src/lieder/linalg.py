"""Exact dense linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`.  Row
reduction runs on primitive integer rows (denominators cleared, gcd divided
out after every update) and is converted back to rationals only for the
final reduced row echelon form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, LiederError

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(LiederError, ValueError):
    pass


class SpectrumNotRational(InputError):
    """The characteristic polynomial does not split over the rationals."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    return str(x)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(to_fraction(x) for x in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionMismatch("ragged matrix")
    return m


def as_vector(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(to_fraction(entries[i]) if i == j else ZERO for j in range(n))
        for i in range(n)
    )


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise DimensionMismatch(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence) -> Vector:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return tuple(sum((x * y for x, y in zip(row, v) if y), ZERO) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = to_fraction(c)
    return tuple(tuple(c * x for x in r) for r in a)


def mat_pow(a: Matrix, e: int) -> Matrix:
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        e >>= 1
    return result


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(matmul(a, b), matmul(b, a))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


def flatten(m: Matrix) -> Vector:
    """Row-major vectorization of a matrix."""
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence, n: int) -> Matrix:
    if len(v) != n * n:
        raise DimensionMismatch(f"expected {n * n} entries, got {len(v)}")
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))


# ---------------------------------------------------------------------------
# integer row elimination
# ---------------------------------------------------------------------------

def _primitive(row: dict) -> dict:
    g = math.gcd(*row.values())
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def integer_row(values: Sequence) -> dict:
    """Sparse primitive integer row proportional to a rational vector."""
    nz = {i: to_fraction(x) for i, x in enumerate(values) if x}
    return _integer_row_from_sparse(nz)


def _integer_row_from_sparse(nz: dict) -> dict:
    if not nz:
        return {}
    den = 1
    for x in nz.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // math.gcd(den, x.denominator)
    if den == 1:
        row = {i: int(x) for i, x in nz.items()}
    else:
        row = {i: int(x * den) for i, x in nz.items()}
    return _primitive(row)


class Echelon:
    """Incremental row echelon form over the integers.

    Rows are sparse ``{column: int}`` dicts kept primitive.  ``add`` returns
    True when the row was independent of everything added so far.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        pivots = self.pivots
        while row:
            col = min(row)
            p = pivots.get(col)
            if p is None:
                break
            a = p[col]
            b = row[col]
            g = math.gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                row = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                nv = row.get(k, 0) - b * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            if row:
                row = _primitive(row)
        return row

    def add(self, row: dict) -> bool:
        if not row:
            return False
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def add_vector(self, values: Sequence) -> bool:
        return self.add(integer_row(values))

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Fully reduced echelon form with unit pivots, as rationals."""
        cols = sorted(self.pivots)
        reduced: dict[int, dict] = {}
        for c in reversed(cols):
            row = dict(self.pivots[c])
            for k in [k for k in row if k != c and k in reduced]:
                v = row.get(k)
                if not v:
                    continue
                q = reduced[k]
                a = q[k]
                g = math.gcd(a, v)
                a //= g
                v //= g
                if a != 1:
                    row = {j: a * x for j, x in row.items()}
                for j, x in q.items():
                    nv = row.get(j, 0) - v * x
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
                row = _primitive(row)
            reduced[c] = row
        out = []
        for c in cols:
            row = reduced[c]
            lead = row[c]
            dense = [ZERO] * self.ncols
            for j, x in row.items():
                dense[j] = Fraction(x, lead)
            out.append(tuple(dense))
        return tuple(out), tuple(cols)


def rref(m: Matrix, ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if ncols is None:
        ncols = shape(m)[1]
    ech = Echelon(ncols)
    for row in m:
        ech.add_vector(row)
    return ech.rref()


def rank(m: Matrix) -> int:
    ech = Echelon(shape(m)[1])
    for row in m:
        ech.add_vector(row)
    return ech.rank


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim with a canonical RREF basis (rows)."""

    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        ech = Echelon(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
            ech.add_vector(v)
        return cls.from_echelon(ech)

    @classmethod
    def from_echelon(cls, ech: Echelon) -> "Subspace":
        basis, _ = ech.rref()
        return cls(ech.ncols, basis)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    def echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim)
        for row in self.basis:
            ech.add_vector(row)
        return ech

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        # RREF membership: subtract the pivot combination and test for zero
        residual = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = residual[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        residual[j] -= c * row[j]
        return not any(residual)

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains_vector(v) for v in other.basis)

    def annihilator(self) -> "Subspace":
        """Linear functionals (as vectors) vanishing on this subspace."""
        return nullspace(self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    # x in a and b  <=>  x is killed by both annihilators
    rows = a.annihilator().basis + b.annihilator().basis
    return nullspace(rows, a.ambient_dim)


def subspace_algebra(a: Subspace, b: Subspace, which: str):
    if which == "sum":
        return subspace_sum(a, b)
    if which == "intersect":
        return subspace_intersect(a, b)
    if which == "contains":
        return a.contains(b)
    if which == "equals":
        _check_ambient(a, b)
        return a == b
    raise ValueError(f"unknown subspace operation {which!r}")


def nullspace(m: Matrix, ncols: int | None = None) -> Subspace:
    """Canonical RREF basis of {v : m v = 0}."""
    if ncols is None:
        ncols = shape(m)[1]
    ech = Echelon(ncols)
    for row in m:
        if len(row) != ncols:
            raise DimensionMismatch("row length differs from column count")
        ech.add_vector(row)
    return nullspace_of_echelon(ech)


def nullspace_of_echelon(ech: Echelon) -> Subspace:
    reduced, pivots = ech.rref()
    n = ech.ncols
    pivot_set = set(pivots)
    vectors = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            if row[f]:
                v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, n)


def complement_coordinates(s: Subspace) -> tuple[int, ...]:
    """Indices of the standard basis vectors spanning a coordinate complement."""
    piv = set(s.pivots)
    return tuple(j for j in range(s.ambient_dim) if j not in piv)


# ---------------------------------------------------------------------------
# determinants and characteristic polynomials
# ---------------------------------------------------------------------------

def det(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, c = shape(m)
    if n != c:
        raise DimensionMismatch(f"determinant of non-square {n}x{c} matrix")
    if n == 0:
        return ONE
    scale = Fraction(1)
    rows = []
    for row in m:
        den = math.lcm(*(x.denominator for x in row))
        rows.append([int(x * den) for x in row])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return ZERO
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            rk = rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - rik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[n - 1][n - 1] * scale


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial with rational coefficients, ascending degree."""

    coeffs: tuple

    def __post_init__(self):
        cs = [to_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(())
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = UniPoly((1,))
        for _ in range(e):
            out = out * self
        return out

    def divmod_linear(self, root) -> tuple["UniPoly", Fraction]:
        """Synthetic division by (x - root)."""
        root = to_fraction(root)
        out = []
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop() if out else ZERO
        return UniPoly(tuple(reversed(out))), rem

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if d == 0:
                body = str(a)
            else:
                mono = "x" if d == 1 else f"x^{d}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _as_poly(p) -> UniPoly:
    return p if isinstance(p, UniPoly) else UniPoly((p,))


def char_poly(m: Matrix) -> UniPoly:
    """Monic characteristic polynomial det(xI - m) via Faddeev-LeVerrier."""
    n, c = shape(m)
    if n != c:
        raise DimensionMismatch(f"characteristic polynomial of non-square {n}x{c} matrix")
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = zeros(n, n)
    for k in range(1, n + 1):
        mk = mat_add(matmul(m, mk), mat_scale(coeffs[n - k + 1], identity(n)))
        coeffs[n - k] = -trace(matmul(m, mk)) / k
    return UniPoly(tuple(coeffs))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly) -> tuple[list[tuple[Fraction, int]], int]:
    """Rational roots with multiplicities, and the degree of the rootless cofactor."""
    if p.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    q = p
    zero_mult = 0
    while q.coeffs and q.coeffs[0] == 0:
        q = UniPoly(q.coeffs[1:])
        zero_mult += 1
    if zero_mult:
        roots.append((ZERO, zero_mult))
    changed = True
    while changed and q.degree > 0:
        changed = False
        den = math.lcm(*(c.denominator for c in q.coeffs))
        ints = [int(c * den) for c in q.coeffs]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        for num in _divisors(ints[0]):
            for dd in _divisors(ints[-1]):
                for cand in (Fraction(num, dd), Fraction(-num, dd)):
                    mult = 0
                    while q.degree > 0:
                        quo, rem = q.divmod_linear(cand)
                        if rem:
                            break
                        q = quo
                        mult += 1
                    if mult:
                        roots.append((cand, mult))
                        changed = True
                if changed:
                    break
            if changed:
                break
    roots.sort()
    return roots, q.degree


def generalized_eigenspaces(a: Matrix) -> list[tuple[Fraction, Subspace]]:
    n, c = shape(a)
    if n != c:
        raise DimensionMismatch("generalized eigenspaces of a non-square matrix")
    roots, rest = rational_roots(char_poly(a))
    if rest:
        raise SpectrumNotRational(
            f"characteristic polynomial has an irreducible factor of degree {rest} over Q")
    out = []
    for alpha, mult in roots:
        shifted = mat_sub(a, mat_scale(alpha, identity(n)))
        out.append((alpha, nullspace(mat_pow(shifted, mult), n)))
    return out
