"""Lie algebras given by rational structure constants.

Basis indices are 0-based throughout the Python API.  ``[e_i, e_j] =
sum_k c[i][j][k] e_k``.  Endomorphisms act on coordinate column vectors, so
``ad(x)[k][j]`` is the e_k-coordinate of ``[x, e_j]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg as la
from .errors import InternalInconsistency, LiederError
from .linalg import ZERO, Matrix, Subspace, Vector


@dataclass(frozen=True)
class LieAlgebra:
    n: int
    c: tuple  # c[i][j][k], Fractions
    name: str = field(default="g", compare=False)

    @classmethod
    def from_brackets(cls, n: int, brackets: Mapping, name: str = "g") -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices and i < j.

        Pairs not listed bracket to zero; [e_j, e_i] is filled in by
        antisymmetry.
        """
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), out in brackets.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"bracket index out of range: ({i}, {j})")
            for k, v in out.items():
                v = la.to_fraction(v)
                c[i - 1][j - 1][k - 1] += v
                c[j - 1][i - 1][k - 1] -= v
        return cls(n, _freeze(c), name)

    @classmethod
    def from_tensor(cls, tensor, name: str = "g") -> "LieAlgebra":
        n = len(tensor)
        c = [[[la.to_fraction(x) for x in tensor[i][j]] for j in range(n)] for i in range(n)]
        return cls(n, _freeze(c), name)

    @classmethod
    def abelian(cls, n: int, name: str | None = None) -> "LieAlgebra":
        return cls.from_brackets(n, {}, name or f"abelian_{n}")

    def renamed(self, name: str) -> "LieAlgebra":
        return LieAlgebra(self.n, self.c, name)

    @cached_property
    def _terms(self) -> tuple:
        return tuple(
            (i, j, k, v)
            for i in range(self.n) for j in range(self.n) for k in range(self.n)
            if (v := self.c[i][j][k])
        )

    @cached_property
    def ad_basis(self) -> tuple:
        """ad(e_i) for every basis vector."""
        n = self.n
        return tuple(
            tuple(tuple(self.c[i][j][k] for j in range(n)) for k in range(n))
            for i in range(n)
        )

    @cached_property
    def integer_scale(self) -> int:
        """Least common denominator of the structure constants."""
        return math.lcm(1, *(v.denominator for (_, _, _, v) in self._terms))

    def basis_vector(self, i: int) -> Vector:
        return la.unit_vector(self.n, i)

    def is_abelian(self) -> bool:
        return not self._terms

    def nonzero_brackets(self) -> dict:
        """1-based ``{(i, j): {k: coeff}}`` for i < j, the file-format view."""
        out: dict = {}
        for i, j, k, v in self._terms:
            if i < j:
                out.setdefault((i + 1, j + 1), {})[k + 1] = v
        return out

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, n={self.n})"


def _freeze(c) -> tuple:
    return tuple(tuple(tuple(row) for row in plane) for plane in c)


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry_ok: bool
    jacobi_ok: bool
    failing_triples: tuple = ()   # ((i, j, k), jacobiator vector)
    failing_pairs: tuple = ()     # (i, j) with c[i][j] != -c[j][i]

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and self.jacobi_ok


def validate(g: LieAlgebra) -> ValidationReport:
    n = g.n
    bad_pairs = tuple(
        (i, j) for i in range(n) for j in range(i, n)
        if any(g.c[i][j][k] != -g.c[j][i][k] for k in range(n))
    )
    bad = []
    for i, j, k in itertools.combinations(range(n), 3):
        x, y, z = (g.basis_vector(t) for t in (i, j, k))
        jac = la.vec_add(
            la.vec_add(bracket(g, x, bracket(g, y, z)), bracket(g, y, bracket(g, z, x))),
            bracket(g, z, bracket(g, x, y)),
        )
        if any(jac):
            bad.append(((i, j, k), jac))
    return ValidationReport(not bad_pairs, not bad, tuple(bad), bad_pairs)


def _check_len(g: LieAlgebra, *vs) -> None:
    for v in vs:
        if len(v) != g.n:
            raise la.DimensionMismatch(f"expected a vector of length {g.n}, got {len(v)}")


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    _check_len(g, x, y)
    out = [ZERO] * g.n
    for i, j, k, v in g._terms:
        xi = x[i]
        if xi:
            yj = y[j]
            if yj:
                out[k] += xi * yj * v
    return tuple(out)


def nested_bracket(g: LieAlgebra, xs: Sequence[Sequence]) -> Vector:
    """Right-nested bracket [x1, [x2, [..., [xk, xk+1]...]]]."""
    if len(xs) < 2:
        raise ValueError("a nested bracket needs at least two arguments")
    acc = tuple(xs[-1])
    for x in reversed(xs[:-1]):
        acc = bracket(g, x, acc)
    return acc


def nested_bracket_basis(g: LieAlgebra, idx: Sequence[int]) -> Vector:
    """Nested bracket of basis vectors given by index."""
    acc = g.basis_vector(idx[-1])
    for i in reversed(idx[:-1]):
        acc = la.matvec(g.ad_basis[i], acc)
    return acc


def ad(g: LieAlgebra, x: Sequence) -> Matrix:
    _check_len(g, x)
    n = g.n
    out = [[ZERO] * n for _ in range(n)]
    for i, j, k, v in g._terms:
        if x[i]:
            out[k][j] += x[i] * v
    return tuple(tuple(r) for r in out)


def span_brackets(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """[A, B] as the span of brackets of basis pairs."""
    return Subspace.span(
        (bracket(g, x, y) for x in a.basis for y in b.basis), g.n)


def full(g: LieAlgebra) -> Subspace:
    return Subspace.full(g.n)


def center(g: LieAlgebra) -> Subspace:
    # x central  <=>  ad(e_j) x = 0 for every j
    rows = tuple(row for m in g.ad_basis for row in m)
    return la.nullspace(rows, g.n)


def centralizer_mod(g: LieAlgebra, s: Subspace) -> Subspace:
    """{x : [x, g] subset of s}; the preimage of the center of g/s when s is an ideal."""
    ann = s.annihilator().basis
    rows = tuple(la.matvec(la.transpose(m), f) for m in g.ad_basis for f in ann)
    # [x, e_j] = -ad(e_j) x, so each row is f . ad(e_j)
    return la.nullspace(rows, g.n)


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return s.contains(span_brackets(g, full(g), s))


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesChain:
    kind: str
    terms: tuple

    @property
    def dims(self) -> tuple:
        return tuple(t.dim for t in self.terms)

    @property
    def last(self) -> Subspace:
        return self.terms[-1]

    def reaches_zero(self) -> bool:
        return self.last.dim == 0


def _iterate(first: Subspace, step, kind: str, limit: int) -> SeriesChain:
    terms = [first]
    for _ in range(limit + 1):
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            return SeriesChain(kind, tuple(terms))
        terms.append(nxt)
    raise InternalInconsistency(f"{kind} series failed to stabilize")


def lower_central_series(g: LieAlgebra) -> SeriesChain:
    gg = full(g)
    return _iterate(gg, lambda t: span_brackets(g, gg, t), "lower_central", g.n)


def derived_series(g: LieAlgebra, start: Subspace | None = None) -> SeriesChain:
    first = full(g) if start is None else start
    return _iterate(first, lambda t: span_brackets(g, t, t), "derived", g.n)


def upper_central_series(g: LieAlgebra) -> SeriesChain:
    return _iterate(Subspace.zero(g.n), lambda t: centralizer_mod(g, t),
                    "upper_central", g.n)


def k_derived_series(g: LieAlgebra, s: Subspace, k: int) -> SeriesChain:
    """Derived sequence of s inside the (k+1)-ary right-nested bracket algebra."""
    if k < 1:
        raise ValueError("order must be at least 1")

    def step(t: Subspace) -> Subspace:
        vecs = (nested_bracket(g, xs) for xs in itertools.product(t.basis, repeat=k + 1))
        return Subspace.span(vecs, g.n)

    return _iterate(s, step, "k_derived", g.n)


def nilpotency_class(g: LieAlgebra) -> int | None:
    """Largest c with gamma_c != 0 when the series reaches 0; None if not nilpotent."""
    lcs = lower_central_series(g)
    if not lcs.reaches_zero():
        return None
    return len(lcs.terms) - 1


def lcs_term(g: LieAlgebra, k: int) -> Subspace:
    """gamma_k with gamma_1 = g; stays at the stable term past the end."""
    terms = lower_central_series(g).terms
    return terms[min(k, len(terms)) - 1]


# ---------------------------------------------------------------------------
# Killing form and radical
# ---------------------------------------------------------------------------

def killing_form(g: LieAlgebra) -> Matrix:
    ads = g.ad_basis
    n = g.n
    return tuple(
        tuple(la.trace(la.matmul(ads[i], ads[j])) for j in range(n))
        for i in range(n)
    )


def radical(g: LieAlgebra) -> Subspace:
    """Solvable radical as the Killing-orthogonal complement of [g, g]."""
    kf = killing_form(g)
    derived = span_brackets(g, full(g), full(g))
    rows = tuple(la.matvec(kf, d) for d in derived.basis)
    rad = la.nullspace(rows, g.n)
    if not derived_series(g, rad).reaches_zero() or not is_ideal(g, rad):
        raise InternalInconsistency("computed radical is not a solvable ideal")
    return rad


@dataclass(frozen=True)
class Predicates:
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_perfect: bool
    is_semisimple: bool
    is_reductive: bool
    is_centerless: bool

    def tags(self) -> frozenset:
        return frozenset(
            name[3:] for name, value in vars(self).items() if value
        )


def structural_predicates(g: LieAlgebra) -> Predicates:
    gg = full(g)
    derived = span_brackets(g, gg, gg)
    z = center(g)
    return Predicates(
        is_abelian=g.is_abelian(),
        is_nilpotent=lower_central_series(g).reaches_zero(),
        is_solvable=derived_series(g).reaches_zero(),
        is_perfect=derived == gg,
        is_semisimple=g.n > 0 and la.det(killing_form(g)) != 0,
        is_reductive=radical(g) == z,
        is_centerless=z.dim == 0,
    )


def restrict(g: LieAlgebra, indices: Sequence[int], name: str | None = None) -> LieAlgebra:
    """Subalgebra on a set of basis vectors closed under the bracket."""
    idx = list(indices)
    pos = {j: t for t, j in enumerate(idx)}
    m = len(idx)
    c = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for i, j, k, v in g._terms:
        if i in pos and j in pos:
            if k not in pos:
                raise LiederError("basis subset is not closed under the bracket")
            c[pos[i]][pos[j]][pos[k]] = v
    return LieAlgebra(m, _freeze(c), name or f"{g.name}|{idx}")
