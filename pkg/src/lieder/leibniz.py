"""Leibniz-derivations of order k and the identities around them.

An endomorphism P is a Leibniz-derivation of order k when

    P[x1, ..., xk+1] = sum_j [x1, ..., P xj, ..., xk+1]

for the right-nested (k+1)-bracket.  Endomorphisms are vectorized row-major:
entry P[r][c] sits at position r*n + c of the n^2-dimensional space.

Two assemblies of the defining linear system are provided:

``"span"`` (default)
    The defect of a tuple (x1, x') depends on x' only through the pair
    (nested bracket of x', defect map of x').  Such pairs for all tuples of
    length m span a space of dimension at most n + n^3, and the space for
    length m+1 is the image of the one for length m under n linear maps.
    Tracking a basis of these spaces replaces the n^(k+1) tuple sweep.

``"tuples"``
    Streams the equations of every basis tuple through slot operators
    built from ad-matrices, skipping tuples whose bracket and slot
    operators all vanish.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg as la
from .errors import (CapExceeded, DivisibilityViolated, InvalidM, LiederError,
                     PreconditionViolated, SummandsNotMarked)
from .liealg import LieAlgebra, ad, bracket, center, radical, restrict
from .linalg import Echelon, Matrix, Subspace

DEFAULT_TUPLE_CAP = 2 ** 21


def tuple_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("LIEDER_TUPLE_CAP")
    return int(env) if env else DEFAULT_TUPLE_CAP


def check_cap(n: int, arity: int, cap: int | None = None) -> None:
    limit = tuple_cap(cap)
    count = n ** arity
    if count > limit:
        raise CapExceeded(count, limit)


@dataclass(frozen=True)
class DerivationSpace:
    order: int
    space: Subspace
    algebra: LieAlgebra

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def n(self) -> int:
        return self.algebra.n

    def matrices(self) -> list[Matrix]:
        return [la.unflatten(v, self.n) for v in self.space.basis]

    def __contains__(self, p: Matrix) -> bool:
        return self.space.contains_vector(la.flatten(p))

    def is_full(self) -> bool:
        return self.dim == self.n * self.n


# ---------------------------------------------------------------------------
# integer views of the structure constants
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def _int_tables(g: LieAlgebra):
    """Structure constants scaled to integers.

    The defining identities are homogeneous in the bracket, so scaling all
    constants by one nonzero integer leaves every solution space unchanged.
    Returns (scale, cint) with cint[i][j] = {k: int}.
    """
    s = g.integer_scale
    n = g.n
    cint = [[{} for _ in range(n)] for _ in range(n)]
    for i, j, k, v in g._terms:
        cint[i][j][k] = int(v * s)
    return s, cint


def _int_ad(g: LieAlgebra):
    _, cint = _int_tables(g)
    n = g.n
    return [[[cint[i][j].get(k, 0) for j in range(n)] for k in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# span assembly
# ---------------------------------------------------------------------------

class _StateTower:
    """Bases of the spaces of (nested bracket, defect map) pairs by tuple length."""

    def __init__(self, g: LieAlgebra):
        self.g = g
        n = g.n
        self.n = n
        self.width = n + n ** 3
        first = Echelon(self.width)
        for i in range(n):
            first.add({i: 1})
        self.levels = [None, first]  # levels[m] for tuple length m
        self.stable_from: int | None = None

    def level(self, m: int) -> Echelon:
        while len(self.levels) <= m:
            cur = len(self.levels) - 1
            if self.stable_from is not None:
                self.levels.append(self.levels[cur])
                continue
            nxt = self._advance(self.levels[cur])
            prev = self.levels[cur]
            if nxt.rank == prev.rank and all(prev.contains(r) for r in nxt.rows()):
                self.stable_from = cur
            self.levels.append(nxt)
        return self.levels[m]

    def _advance(self, ech: Echelon) -> Echelon:
        out = Echelon(self.width)
        states = ech.rows()
        for i in range(self.n):
            for s in states:
                out.add(self._phi(i, s))
        return out

    def _phi(self, i: int, s: dict) -> dict:
        n = self.n
        nn = n * n
        _, cint = _int_tables(self.g)
        b = {}
        delta: dict[int, dict] = {}
        for idx, v in s.items():
            if idx < n:
                b[idx] = v
            else:
                a, u = divmod(idx - n, nn)
                delta.setdefault(a, {})[u] = v
        out: dict[int, int] = {}

        def put(idx, v):
            nv = out.get(idx, 0) + v
            if nv:
                out[idx] = nv
            else:
                out.pop(idx, None)

        ci = cint[i]
        # nested bracket: [e_i, b]
        for j, bj in b.items():
            for k, v in ci[j].items():
                put(k, v * bj)
        # P[e_i, b] - [P e_i, b] - [e_i, P b], with [e_i, b] itself expanded
        ib = {}
        for j, bj in b.items():
            for k, v in ci[j].items():
                ib[k] = ib.get(k, 0) + v * bj
        ib = {k: v for k, v in ib.items() if v}
        for a in range(n):
            base = n + a * nn + a * n
            for c, vc in ib.items():
                put(base + c, vc)
        for r in range(n):
            vr = {}
            for j, bj in b.items():
                for k, v in cint[r][j].items():
                    vr[k] = vr.get(k, 0) + v * bj
            for a, v in vr.items():
                if v:
                    put(n + a * nn + r * n + i, -v)
        for r in range(n):
            for a, v in ci[r].items():
                base = n + a * nn + r * n
                for c, bc in b.items():
                    put(base + c, -v * bc)
        # [e_i, defect of the suffix]
        for a, row in delta.items():
            for a2, v in ci[a].items():
                base = n + a2 * nn
                for u, x in row.items():
                    put(base + u, v * x)
        return out

    def equations(self, k: int) -> Echelon:
        n = self.n
        nn = n * n
        eqs = Echelon(nn)
        for s in self.level(k + 1).rows():
            rows: dict[int, dict] = {}
            for idx, v in s.items():
                if idx >= n:
                    a, u = divmod(idx - n, nn)
                    rows.setdefault(a, {})[u] = v
            for row in rows.values():
                eqs.add(la._primitive(row))
        return eqs


@lru_cache(maxsize=64)
def _tower(g: LieAlgebra) -> _StateTower:
    return _StateTower(g)


# ---------------------------------------------------------------------------
# tuple assembly
# ---------------------------------------------------------------------------

def _imatvec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def _imatmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def tuple_equations(g: LieAlgebra, k: int):
    """Yield (tuple, [row dicts]) for each basis tuple with a nontrivial equation.

    Each row is one output coordinate of
    P b_t - sum_j C_{t,j} P e_{i_j} = 0 in the n^2 unknowns P[r][c].
    """
    n = g.n
    ads = _int_ad(g)
    eye = [[int(r == c) for c in range(n)] for r in range(n)]
    for t in itertools.product(range(n), repeat=k + 1):
        # suffix brackets w_j = [e_{i_{j+1}}, ..., e_{i_{k+1}}]
        w = [None] * (k + 1)
        w[k] = [int(x == t[k]) for x in range(n)]
        for j in range(k - 1, -1, -1):
            w[j] = _imatvec(ads[t[j]], w[j + 1])
        b = w[0]
        slots = []
        prefix = eye
        for j in range(k + 1):
            if j < k:
                wj = w[j + 1]
                ad_w = [[-sum(wj[s] * ads[s][r][c] for s in range(n) if wj[s])
                         for c in range(n)] for r in range(n)]
                slots.append(_imatmul(prefix, ad_w))
                prefix = _imatmul(prefix, ads[t[j]])
            else:
                slots.append(prefix)
        if not any(b) and not any(any(r) for s in slots for r in s):
            continue
        rows = []
        for a in range(n):
            row: dict[int, int] = {}
            for c, bc in enumerate(b):
                if bc:
                    row[a * n + c] = row.get(a * n + c, 0) + bc
            for j, cm in enumerate(slots):
                for r in range(n):
                    v = cm[a][r]
                    if v:
                        key = r * n + t[j]
                        row[key] = row.get(key, 0) - v
            row = {u: v for u, v in row.items() if v}
            if row:
                rows.append(row)
        if rows:
            yield t, rows


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def leibniz_derivation_space(g: LieAlgebra, k: int, *, cap: int | None = None,
                             method: str = "span") -> DerivationSpace:
    """LDer_k(g) as a subspace of the row-major vectorized endomorphisms."""
    if k < 1:
        raise PreconditionViolated("order must be at least 1")
    check_cap(g.n, k + 1, cap)
    nn = g.n * g.n
    if method == "span":
        eqs = _tower(g).equations(k)
    elif method == "tuples":
        eqs = Echelon(nn)
        for _, rows in tuple_equations(g, k):
            for row in rows:
                eqs.add(la._primitive(row))
    else:
        raise ValueError(f"unknown assembly method {method!r}")
    return DerivationSpace(k, la.nullspace_of_echelon(eqs), g)


def derivations(g: LieAlgebra, **kw) -> DerivationSpace:
    return leibniz_derivation_space(g, 1, **kw)


def inner_derivations(g: LieAlgebra) -> Subspace:
    return Subspace.span((la.flatten(m) for m in g.ad_basis), g.n * g.n)


def gl(g: LieAlgebra) -> Subspace:
    return Subspace.full(g.n * g.n)


@dataclass(frozen=True)
class ChainReport:
    orders: tuple          # (1, 2, ..., k_max) for Der, LDer_2, ...
    dims: tuple            # (dim Inn, dim Der, dim LDer_2, ..., dim LDer_kmax)
    inclusions: dict       # label -> bool

    @property
    def ok(self) -> bool:
        return all(self.inclusions.values())


def verify_chain(g: LieAlgebra, k_max: int, *, cap: int | None = None) -> ChainReport:
    inn = inner_derivations(g)
    der = derivations(g, cap=cap).space
    full = gl(g)
    dims = [inn.dim, der.dim]
    inc = {"Inn <= Der": der.contains(inn)}
    for k in range(2, k_max + 1):
        sp = leibniz_derivation_space(g, k, cap=cap).space
        dims.append(sp.dim)
        inc[f"Der <= LDer_{k}"] = sp.contains(der)
        inc[f"LDer_{k} <= gl"] = full.contains(sp)
    return ChainReport(tuple(range(1, k_max + 1)), tuple(dims), inc)


def verify_divisibility_inclusion(g: LieAlgebra, s: int, t: int, *, cap=None) -> bool:
    if s < 1 or t < 1 or t % s:
        raise DivisibilityViolated(f"{s} does not divide {t}")
    small = leibniz_derivation_space(g, s, cap=cap).space
    big = leibniz_derivation_space(g, t, cap=cap).space
    return big.contains(small)


def verify_sum_inclusion(g: LieAlgebra, k: int, l: int, *, cap=None) -> bool:
    both = (leibniz_derivation_space(g, k, cap=cap).space
            & leibniz_derivation_space(g, l, cap=cap).space)
    return leibniz_derivation_space(g, k + l, cap=cap).space.contains(both)


def verify_bracket_closure(space: DerivationSpace) -> bool:
    mats = space.matrices()
    for a, b in itertools.combinations(mats, 2):
        if not space.space.contains_vector(la.flatten(la.commutator(a, b))):
            return False
    return True


def _check_endo(g: LieAlgebra, p: Matrix) -> Matrix:
    p = la.as_matrix(p)
    if la.shape(p) != (g.n, g.n):
        raise la.DimensionMismatch(f"expected a {g.n}x{g.n} matrix, got {la.shape(p)}")
    return p


def is_leibniz_derivation(g: LieAlgebra, p: Matrix, k: int, *, cap=None) -> bool:
    """Check the order-k identity on all basis tuples by direct evaluation.

    Tuples are built right to left; a suffix is summarized by its nested
    bracket N and the sum E of the bracket with P applied in each slot.
    Equal summaries have equal extensions, so they are merged, and an all
    zero summary has only zero extensions, so it is dropped.
    """
    if k < 1:
        raise PreconditionViolated("order must be at least 1")
    p = _check_endo(g, p)
    check_cap(g.n, k + 1, cap)
    n = g.n
    cols = la.transpose(p)  # cols[i] = P e_i
    states = {(g.basis_vector(j), cols[j]) for j in range(n)}
    for _ in range(k):
        nxt = set()
        for nvec, evec in states:
            for i in range(n):
                ei = g.basis_vector(i)
                new_n = bracket(g, ei, nvec)
                new_e = la.vec_add(bracket(g, cols[i], nvec), bracket(g, ei, evec))
                if any(new_n) or any(new_e):
                    nxt.add((new_n, new_e))
        states = nxt
    return all(la.matvec(p, nvec) == evec for nvec, evec in states)


def is_leibniz_automorphism(g: LieAlgebra, a: Matrix, k: int, *, cap=None) -> bool:
    if k < 1:
        raise PreconditionViolated("order must be at least 1")
    a = _check_endo(g, a)
    check_cap(g.n, k + 1, cap)
    if la.det(a) == 0:
        return False
    n = g.n
    cols = la.transpose(a)
    states = {(g.basis_vector(j), cols[j]) for j in range(n)}
    for _ in range(k):
        nxt = set()
        for nvec, mvec in states:
            for i in range(n):
                new_n = bracket(g, g.basis_vector(i), nvec)
                new_m = bracket(g, cols[i], mvec)
                if any(new_n) or any(new_m):
                    nxt.add((new_n, new_m))
        states = nxt
    return all(la.matvec(a, nvec) == mvec for nvec, mvec in states)


# ---------------------------------------------------------------------------
# the (*_{m,k}) system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StarSystem:
    m: Fraction
    k: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def star_identity_space(g: LieAlgebra, m, k: int, *, cap=None) -> StarSystem:
    """Endomorphisms f with

        m f([x1..xk]) + sum_{j=1}^{k-1} [x1, ..., xj, f([x_{j+1}..xk])] = 0

    on all basis k-tuples (for j = k-1 the inner term is f(xk)).
    """
    m = la.to_fraction(m)
    if m == 0 or (m < 0 and m.denominator == 1):
        raise InvalidM(f"m = {m} lies in {{0, -1, -2, ...}}")
    if k < 2:
        raise PreconditionViolated("arity k must be at least 2")
    check_cap(g.n, k, cap)
    n = g.n
    ads = _int_ad(g)
    # both sides carry k-1 brackets; clear m's denominator too
    mn, md = m.numerator, m.denominator
    eqs = Echelon(n * n)
    for t in itertools.product(range(n), repeat=k):
        w = [None] * k
        w[k - 1] = [int(x == t[k - 1]) for x in range(n)]
        for j in range(k - 2, -1, -1):
            w[j] = _imatvec(ads[t[j]], w[j + 1])
        prefix = [[int(r == c) for c in range(n)] for r in range(n)]
        terms = [(None, mn, w[0])]  # (prefix matrix or None for identity, scalar, argument)
        for j in range(1, k):
            prefix = _imatmul(prefix, ads[t[j - 1]])
            terms.append((prefix, md, w[j]))
        for a in range(n):
            row: dict[int, int] = {}
            for pm, scal, arg in terms:
                if not any(arg):
                    continue
                for r in range(n):
                    coef = scal * (int(a == r) if pm is None else pm[a][r])
                    if coef:
                        for c, x in enumerate(arg):
                            if x:
                                row[r * n + c] = row.get(r * n + c, 0) + coef * x
            row = {u: v for u, v in row.items() if v}
            if row:
                eqs.add(la._primitive(row))
    return StarSystem(m, k, la.nullspace_of_echelon(eqs))


# ---------------------------------------------------------------------------
# radical invariance and direct-sum decomposition
# ---------------------------------------------------------------------------

def radical_invariance_check(g: LieAlgebra, k: int, *, cap=None) -> bool:
    rad = radical(g)
    for d in leibniz_derivation_space(g, k, cap=cap).matrices():
        if not rad.contains(Subspace.span((la.matvec(d, v) for v in rad.basis), g.n)):
            return False
    return True


@dataclass(frozen=True)
class DecompositionReport:
    dim_lder: int
    dim_inner_semisimple: int
    dim_abelian: int
    equals_der: bool

    @property
    def expected_dim(self) -> int:
        return self.dim_inner_semisimple + self.dim_abelian ** 2

    @property
    def ok(self) -> bool:
        return self.dim_lder == self.expected_dim and self.equals_der


def dimension_decomposition_check(g: LieAlgebra, k: int, summands=None, *,
                                  cap=None) -> DecompositionReport:
    """Compare LDer_k(s + a) with Inn(s) + gl(a) and with Der.

    ``summands`` maps "semisimple" and "abelian" to the 0-based basis
    indices of the two ideals.
    """
    if not summands or "abelian" not in summands:
        raise SummandsNotMarked(f"{g.name} has no marked semisimple/abelian summands")
    s_idx = tuple(summands.get("semisimple", ()))
    a_idx = tuple(summands["abelian"])
    if sorted(s_idx + a_idx) != list(range(g.n)):
        raise SummandsNotMarked("summand indices must partition the basis")
    inn_s = inner_derivations(restrict(g, s_idx)).dim if s_idx else 0
    lder = leibniz_derivation_space(g, k, cap=cap).space
    der = derivations(g, cap=cap).space
    return DecompositionReport(lder.dim, inn_s, len(a_idx), lder == der)

