"""Nilpotency decided through invertible Leibniz-derivations.

A Lie algebra over a field of characteristic zero is nilpotent exactly when
some Leibniz-derivation of some order is invertible.  This module builds such
derivations explicitly, searches derivation spaces for invertible elements,
and packages the outcome as a re-checkable certificate.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import linalg as la
from .errors import (DivisibilityViolated, NotADerivation, NotNilpotent, PreconditionViolated,
                     WitnessVerificationFailed)
from .leibniz import (DerivationSpace, is_leibniz_derivation,
                      leibniz_derivation_space)
from .liealg import (LieAlgebra, center, lcs_term, lower_central_series,
                     nested_bracket, nested_bracket_basis, nilpotency_class,
                     validate)
from .linalg import Matrix, Subspace

DEFAULT_TRIALS = 20
DEFAULT_SEED = 0
COEFF_BOUND = 2 ** 16


# ---------------------------------------------------------------------------
# evidence and certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvertibleLDer:
    order: int
    matrix: Matrix
    det: Fraction
    kind = "InvertibleLDer"


@dataclass(frozen=True)
class NoInvertibleFound:
    orders: tuple
    trials: int
    seed: int
    kind = "NoInvertibleFound"


@dataclass(frozen=True)
class LcsVanishing:
    nil_class: int
    dims: tuple
    kind = "LcsVanishing"


@dataclass(frozen=True)
class LcsStabilizedNonzero:
    stable_term: Subspace
    kind = "LcsStabilizedNonzero"


Evidence = Union[InvertibleLDer, NoInvertibleFound, LcsVanishing, LcsStabilizedNonzero]

NILPOTENT = "Nilpotent"
NOT_NILPOTENT = "NotNilpotent"


@dataclass(frozen=True)
class NilpotencyCertificate:
    algebra: LieAlgebra
    verdict: str
    evidence: Evidence

    @property
    def is_nilpotent(self) -> bool:
        return self.verdict == NILPOTENT


def _sample_rng(seed: int, order: int) -> random.Random:
    # per-order stream, independent of how many orders were tried before
    return random.Random(seed * 1_000_003 + order)


def find_invertible_element(space: DerivationSpace, trials: int = DEFAULT_TRIALS,
                            seed: int = DEFAULT_SEED) -> InvertibleLDer | NoInvertibleFound:
    """Look for an invertible element of a derivation space.

    The identity and then each basis element are tried first; after that,
    ``trials`` random integer combinations with coefficients in
    [-2^16, 2^16].  A hit is exact; a miss is only probabilistic.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = space.n
    eye = la.identity(n)
    if eye in space:
        return InvertibleLDer(space.order, eye, la.ONE)
    mats = space.matrices()
    for m in mats:
        d = la.det(m)
        if d:
            return InvertibleLDer(space.order, m, d)
    if mats:
        rng = _sample_rng(seed, space.order)
        for _ in range(trials):
            coeffs = [rng.randint(-COEFF_BOUND, COEFF_BOUND) for _ in mats]
            m = _combine(coeffs, mats, n)
            d = la.det(m)
            if d:
                return InvertibleLDer(space.order, m, d)
    return NoInvertibleFound((space.order,), trials, seed)


def _combine(coeffs: Sequence[int], mats: Sequence[Matrix], n: int) -> Matrix:
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if c:
            for r in range(n):
                row = m[r]
                orow = out[r]
                for j in range(n):
                    if row[j]:
                        orow[j] += c * row[j]
    return tuple(tuple(r) for r in out)


def nilpotency_by_main_theorem(g: LieAlgebra, trials: int = DEFAULT_TRIALS,
                               seed: int = DEFAULT_SEED, *, cap=None) -> NilpotencyCertificate:
    """Decide nilpotency by searching LDer_k for k = 1..n.

    A nilpotent algebra has class at most n, so LDer_n is all of gl and the
    identity is found deterministically; a NotNilpotent verdict therefore
    never misclassifies a nilpotent algebra.
    """
    for k in range(1, max(g.n, 1) + 1):
        found = find_invertible_element(leibniz_derivation_space(g, k, cap=cap), trials, seed)
        if isinstance(found, InvertibleLDer):
            return NilpotencyCertificate(g, NILPOTENT, found)
    return NilpotencyCertificate(
        g, NOT_NILPOTENT, NoInvertibleFound(tuple(range(1, g.n + 1)), trials, seed))


def nilpotency_by_lcs(g: LieAlgebra) -> NilpotencyCertificate:
    lcs = lower_central_series(g)
    if lcs.reaches_zero():
        return NilpotencyCertificate(g, NILPOTENT, LcsVanishing(len(lcs.terms) - 1, lcs.dims))
    return NilpotencyCertificate(g, NOT_NILPOTENT, LcsStabilizedNonzero(lcs.last))


def verify_certificate(cert: NilpotencyCertificate) -> list[str]:
    """Re-check a certificate from scratch; returns the list of problems found."""
    g = cert.algebra
    problems = []
    report = validate(g)
    if not report.ok:
        return ["algebra fails antisymmetry or Jacobi"]
    ev = cert.evidence
    if isinstance(ev, InvertibleLDer):
        if cert.verdict != NILPOTENT:
            problems.append("invertible Leibniz-derivation attached to a NotNilpotent verdict")
        if la.shape(ev.matrix) != (g.n, g.n):
            return problems + ["matrix has the wrong shape"]
        d = la.det(ev.matrix)
        if d != ev.det:
            problems.append(f"determinant mismatch: recorded {ev.det}, recomputed {d}")
        if d == 0:
            problems.append("matrix is singular")
        if not is_leibniz_derivation(g, ev.matrix, ev.order):
            problems.append(f"matrix is not a Leibniz-derivation of order {ev.order}")
    elif isinstance(ev, LcsVanishing):
        terms = lower_central_series(g).terms
        c = ev.nil_class
        if not (1 <= c < len(terms) and terms[c].dim == 0 and terms[c - 1].dim > 0):
            problems.append("lower central series does not vanish at the recorded class")
        if cert.verdict != NILPOTENT:
            problems.append("vanishing series attached to a NotNilpotent verdict")
    elif isinstance(ev, (LcsStabilizedNonzero, NoInvertibleFound)):
        if cert.verdict != NOT_NILPOTENT:
            problems.append("non-nilpotency evidence attached to a Nilpotent verdict")
        if nilpotency_class(g) is not None:
            problems.append("lower central series reaches 0, algebra is nilpotent")
    else:
        problems.append(f"unknown evidence {type(ev).__name__}")
    return problems


# ---------------------------------------------------------------------------
# explicit constructions
# ---------------------------------------------------------------------------

def construct_semisimple_lder(g: LieAlgebra) -> tuple[int, Matrix]:
    """Invertible diagonalizable Leibniz-derivation of order ceil(c/2).

    Identity on the coordinate complement W of gamma_{q+1}, (q+1) times the
    identity on gamma_{q+1}.
    """
    c = nilpotency_class(g)
    if c is None:
        raise NotNilpotent(f"{g.name} is not nilpotent")
    q = -(-c // 2)
    deep = lcs_term(g, q + 1)
    w_idx = la.complement_coordinates(deep)
    n = g.n
    # columns: W basis vectors, then gamma_{q+1} basis
    basis_cols = [g.basis_vector(j) for j in w_idx] + list(deep.basis)
    b = la.transpose(basis_cols)
    eigen = [1] * len(w_idx) + [q + 1] * deep.dim
    b_inv = _inverse(b)
    p = la.matmul(la.matmul(b, la.diag(eigen)), b_inv)
    return q, p


def _inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, la.identity(n))]
    reduced, pivots = la.rref(aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(reduced) < n:
        raise la.DimensionMismatch("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)


@dataclass(frozen=True)
class StrictWitness:
    matrix: Matrix
    indices: tuple   # basis tuple whose nested bracket is u
    u: tuple
    z: tuple
    k: int
    l: int


def construct_strict_witness(g: LieAlgebra, k: int, l: int) -> StrictWitness:
    """Element of LDer_k(g) outside LDer_l(g) for k <= c and l | k - 1.

    Scans basis k-tuples lexicographically for u = [e_i1, ..., e_ik] outside
    gamma_{k+1} and outside the span of the e_ij and gamma_{k+1}; the witness
    sends u to the first central basis vector and kills a complement of u
    containing those vectors.
    """
    c = nilpotency_class(g)
    if c is None:
        raise NotNilpotent(f"{g.name} is not nilpotent")
    if l < 1 or k < 2:
        raise PreconditionViolated("need k >= 2 and l >= 1")
    if k > c:
        raise PreconditionViolated(f"k = {k} exceeds the nilpotency class {c}")
    if (k - 1) % l:
        raise DivisibilityViolated(f"k = {k} is not 1 mod l = {l}")
    n = g.n
    deep = lcs_term(g, k + 1)
    z = center(g).basis[0]
    for idx in itertools.product(range(n), repeat=k):
        u = nested_bracket_basis(g, idx)
        if deep.contains_vector(u):
            continue
        kernel_part = Subspace.span(
            list(deep.basis) + [g.basis_vector(i) for i in sorted(set(idx))], n)
        if kernel_part.contains_vector(u):
            continue
        p = _rank_one_through(g, u, kernel_part, z)
        w = StrictWitness(p, idx, u, z, k, l)
        if not is_leibniz_derivation(g, p, k):
            raise WitnessVerificationFailed(f"witness fails order {k}")
        if is_leibniz_derivation(g, p, l):
            raise WitnessVerificationFailed(f"witness unexpectedly has order {l}")
        return w
    raise WitnessVerificationFailed("no basis tuple yields a usable nested bracket")


def _rank_one_through(g: LieAlgebra, u, kernel_part: Subspace, z) -> Matrix:
    """P with P(u) = z and P = 0 on a complement of u containing kernel_part."""
    n = g.n
    rest = list(kernel_part.basis)
    ech = Subspace.span(rest + [u], n).echelon()
    for j in range(n):
        if ech.rank == n:
            break
        if ech.add_vector(g.basis_vector(j)):
            rest.append(g.basis_vector(j))
    # functional phi with phi(u) = 1, phi(rest) = 0: solve phi . B = e_0
    cols = [u] + rest
    b = la.transpose(cols)
    phi = _inverse(b)[0]
    return tuple(tuple(zi * f for f in phi) for zi in z)


def minimal_invertible_order(g: LieAlgebra, trials: int = DEFAULT_TRIALS,
                             seed: int = DEFAULT_SEED, *, cap=None) -> tuple[int, InvertibleLDer]:
    c = nilpotency_class(g)
    if c is None:
        raise NotNilpotent(f"{g.name} is not nilpotent")
    q, p4 = construct_semisimple_lder(g)
    for k in range(1, c + 1):
        if k == q:
            return k, InvertibleLDer(k, p4, la.det(p4))
        found = find_invertible_element(leibniz_derivation_space(g, k, cap=cap), trials, seed)
        if isinstance(found, InvertibleLDer):
            return k, found
    raise AssertionError("unreachable: the order ceil(c/2) candidate always exists")


def class_via_lder(g: LieAlgebra, *, cap=None) -> int | None:
    """Smallest k <= n with LDer_k = gl, or None."""
    for k in range(1, g.n + 1):
        if leibniz_derivation_space(g, k, cap=cap).is_full():
            return k
    return None


# ---------------------------------------------------------------------------
# eigenspace grading
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradingDecomposition:
    operator: Matrix
    order: int
    parts: tuple  # ((eigenvalue, Subspace), ...)

    def part(self, alpha) -> Subspace:
        for a, s in self.parts:
            if a == alpha:
                return s
        return Subspace.zero(len(self.operator))


@dataclass(frozen=True)
class GradingReport:
    decomposition: GradingDecomposition
    checks: tuple  # ((alphas, target eigenvalue, passed), ...)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.checks)


def grading_check(g: LieAlgebra, p: Matrix, k: int) -> GradingReport:
    """[g_a1, ..., g_a(k+1)] lies in g_(a1 + ... + a(k+1)) for every eigenvalue tuple."""
    p = la.as_matrix(p)
    if not is_leibniz_derivation(g, p, k):
        raise NotADerivation(f"operator is not a Leibniz-derivation of order {k}")
    parts = tuple(la.generalized_eigenspaces(p))
    dec = GradingDecomposition(p, k, parts)
    checks = []
    for combo in itertools.product(parts, repeat=k + 1):
        alphas = tuple(a for a, _ in combo)
        target = dec.part(sum(alphas))
        ok = all(
            target.contains_vector(nested_bracket(g, xs))
            for xs in itertools.product(*(s.basis for _, s in combo))
        )
        checks.append((alphas, sum(alphas), ok))
    return GradingReport(dec, tuple(checks))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _matrix_json(m: Matrix) -> list:
    return [[str(x) for x in row] for row in m]


def certificate_to_json(cert: NilpotencyCertificate) -> dict:
    from .catalog import algebra_to_json

    ev = cert.evidence
    doc = {
        "algebra": algebra_to_json(cert.algebra),
        "verdict": cert.verdict,
        "evidence_kind": ev.kind,
        "order": None,
        "matrix": None,
        "det": None,
        "seed": None,
        "trials": None,
    }
    if isinstance(ev, InvertibleLDer):
        doc.update(order=ev.order, matrix=_matrix_json(ev.matrix), det=str(ev.det))
    elif isinstance(ev, NoInvertibleFound):
        doc.update(order=list(ev.orders), seed=ev.seed, trials=ev.trials)
    elif isinstance(ev, LcsVanishing):
        doc.update(order=ev.nil_class)
    doc["digest"] = certificate_digest(doc)
    return doc


def certificate_digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def certificate_from_json(doc: dict) -> NilpotencyCertificate:
    from .catalog import algebra_from_json

    g = algebra_from_json(doc["algebra"])
    kind = doc["evidence_kind"]
    if kind == "InvertibleLDer":
        ev = InvertibleLDer(int(doc["order"]), la.as_matrix(doc["matrix"]),
                            la.to_fraction(doc["det"]))
    elif kind == "NoInvertibleFound":
        ev = NoInvertibleFound(tuple(doc["order"]), int(doc["trials"]), int(doc["seed"]))
    elif kind == "LcsVanishing":
        ev = LcsVanishing(int(doc["order"]), ())
    elif kind == "LcsStabilizedNonzero":
        ev = LcsStabilizedNonzero(Subspace.zero(g.n))
    else:
        raise ValueError(f"unknown evidence kind {kind!r}")
    return NilpotencyCertificate(g, doc["verdict"], ev)


def verify_certificate_json(doc: dict) -> list[str]:
    """Digest check plus a from-scratch mathematical re-check."""
    problems = []
    if doc.get("digest") != certificate_digest(doc):
        problems.append("digest does not match certificate contents")
    try:
        cert = certificate_from_json(doc)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        return problems + [f"malformed certificate: {exc}"]
    return problems + verify_certificate(cert)
