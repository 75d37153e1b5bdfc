"""Seeded generators of small nilpotent Lie algebras for property tests.

Each algebra is either a quotient of the strictly upper-triangular matrices
n_m by an ideal squeezed between two consecutive lower central terms, or the
subalgebra of n_4 generated by two random elements.  Either way it is then
written in a random rational basis.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from lieder import linalg as la
from lieder.liealg import LieAlgebra, bracket, lower_central_series


def upper_triangular(m: int) -> LieAlgebra:
    """Strictly upper-triangular m x m matrices, basis E_ij (i < j) in lex order."""
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    index = {p: a for a, p in enumerate(pairs)}
    br = {}
    for (a, (i, j)), (b, (k, l)) in itertools.combinations(enumerate(pairs), 2):
        # [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
        out = {}
        if j == k:
            out[index[(i, l)] + 1] = out.get(index[(i, l)] + 1, 0) + 1
        if l == i:
            out[index[(k, j)] + 1] = out.get(index[(k, j)] + 1, 0) - 1
        if out:
            br[(a + 1, b + 1)] = out
    return LieAlgebra.from_brackets(len(pairs), br, f"n_{m}")


def quotient(g: LieAlgebra, ideal: la.Subspace, name: str) -> LieAlgebra:
    keep = la.complement_coordinates(ideal)

    def coords(v):
        r = list(v)
        for row, p in zip(ideal.basis, ideal.pivots):
            c = r[p]
            if c:
                r = [x - c * y for x, y in zip(r, row)]
        return [r[i] for i in keep]

    q = len(keep)
    tensor = [[coords(bracket(g, g.basis_vector(keep[a]), g.basis_vector(keep[b])))
               for b in range(q)] for a in range(q)]
    return LieAlgebra.from_tensor(tensor, name)


def change_basis(g: LieAlgebra, a, name: str | None = None) -> LieAlgebra:
    """Structure constants in the basis given by the columns of a."""
    a = la.as_matrix(a)
    inv = _inverse(a)
    cols = [[row[i] for row in a] for i in range(g.n)]
    tensor = [[la.matvec(inv, bracket(g, cols[i], cols[j])) for j in range(g.n)]
              for i in range(g.n)]
    return LieAlgebra.from_tensor(tensor, name or g.name)


def _inverse(a):
    n = len(a)
    cols = []
    for i in range(n):
        # solve a x = e_i through the nullspace of [a | -e_i]
        aug = [list(row) + [Fraction(-1 if r == i else 0)] for r, row in enumerate(a)]
        ns = la.nullspace(aug, n + 1)
        v = next(b for b in ns.basis if b[n] != 0)
        cols.append([x / v[n] for x in v[:n]])
    return la.transpose(cols)


def random_invertible(n: int, rng: random.Random):
    while True:
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if la.det(a) != 0:
            return a


def subalgebra(g: LieAlgebra, gens, name: str) -> LieAlgebra:
    """Subalgebra generated by gens, in a basis of iterated brackets."""
    basis = []
    sub = la.Subspace.zero(g.n)
    frontier = list(gens)
    while frontier:
        nxt = []
        for v in frontier:
            if not sub.contains_vector(v):
                basis.append(v)
                sub = la.Subspace.span(basis, g.n)
                nxt.extend(bracket(g, b, v) for b in basis)
        frontier = nxt
    a = la.transpose(basis)  # n x d, columns are the new basis
    coords = _left_solver(a)
    d = len(basis)
    tensor = [[coords(bracket(g, basis[i], basis[j])) for j in range(d)] for i in range(d)]
    return LieAlgebra.from_tensor(tensor, name)


def _left_solver(a):
    n, d = la.shape(a)

    def solve(v):
        aug = [list(row) + [-x] for row, x in zip(a, v)]
        ns = la.nullspace(aug, d + 1)
        w = next(b for b in ns.basis if b[d] != 0)
        return [x / w[d] for x in w[:d]]
    return solve


def random_nilpotent(rng: random.Random, max_dim: int = 5) -> LieAlgebra:
    while True:
        if rng.random() < 0.3:
            g = upper_triangular(4)
            gens = [[Fraction(rng.randint(-2, 2)) for _ in range(g.n)] for _ in range(2)]
            if all(x == 0 for v in gens for x in v):
                continue
            q = subalgebra(g, gens, "s")
            if q.n > max_dim:
                continue
            return change_basis(q, random_invertible(q.n, rng), f"rand_{q.n}")
        m = rng.choice([3, 4])
        g = upper_triangular(m)
        terms = lower_central_series(g).terms
        j = rng.randrange(1, len(terms))
        upper, lower = terms[j - 1], terms[j]
        extra = [v for v in upper.basis if rng.random() < 0.5]
        ideal = la.Subspace.span(list(lower.basis) + extra, g.n)
        if not 1 <= g.n - ideal.dim <= max_dim:
            continue
        q = quotient(g, ideal, "q")
        return change_basis(q, random_invertible(q.n, rng), f"rand_{q.n}")


def random_matrix(n: int, rng: random.Random, bound: int = 3):
    return [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
