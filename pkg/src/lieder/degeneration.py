"""One-parameter families of structure constants and their limits at t = 0."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg as la
from .errors import GenericDimUnstable, ParseError, PreconditionViolated, ValidationFailed
from .leibniz import leibniz_derivation_space
from .liealg import LieAlgebra, validate
from .linalg import UniPoly

DEFAULT_SAMPLES = (Fraction(1), Fraction(2), Fraction(1, 3))

_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?(?P<mul>\*)?(?P<t>t(?:\^(?P<exp>\d+))?)?$")


def parse_poly(text: str, where: str | None = None) -> UniPoly:
    """Parse a univariate polynomial in t such as ``"3/2*t^2 - t"``."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError(f"empty polynomial {text!r}", where)
    out = UniPoly(())
    for m in re.finditer(r"[+-]?[^+-]+", s):
        term = m.group(0)
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        tm = _TERM.match(body)
        if not tm or not (tm.group("coef") or tm.group("t")):
            raise ParseError(f"cannot parse term {term!r} in {text!r}", where)
        if tm.group("mul") and not (tm.group("coef") and tm.group("t")):
            raise ParseError(f"dangling '*' in {text!r}", where)
        coef = Fraction(tm.group("coef")) if tm.group("coef") else Fraction(1)
        deg = 0
        if tm.group("t"):
            deg = int(tm.group("exp")) if tm.group("exp") else 1
        out = out + UniPoly((0,) * deg + (sign * coef,))
    if "".join(m.group(0) for m in re.finditer(r"[+-]?[^+-]+", s)) != s:
        raise ParseError(f"cannot parse {text!r}", where)
    return out


def poly_str(p: UniPoly) -> str:
    return str(p).replace("x", "t")


@dataclass(frozen=True)
class ParamLieAlgebra:
    n: int
    c: tuple  # c[i][j][k]: UniPoly in t
    name: str = field(default="family", compare=False)

    @classmethod
    def from_brackets(cls, n: int, brackets: Mapping, name: str = "family") -> "ParamLieAlgebra":
        """``{(i, j): {k: poly}}``, 1-based, i < j; polys as UniPoly or strings."""
        c = [[[UniPoly(()) for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for (i, j), out in brackets.items():
            for k, v in out.items():
                p = parse_poly(v) if isinstance(v, str) else (
                    v if isinstance(v, UniPoly) else UniPoly((v,)))
                c[i - 1][j - 1][k - 1] = c[i - 1][j - 1][k - 1] + p
                c[j - 1][i - 1][k - 1] = c[j - 1][i - 1][k - 1] - p
        return cls(n, tuple(tuple(tuple(r) for r in pl) for pl in c), name)

    def nonzero_brackets(self) -> dict:
        out: dict = {}
        for i, j in itertools.combinations(range(self.n), 2):
            for k in range(self.n):
                p = self.c[i][j][k]
                if not p.is_zero():
                    out.setdefault((i + 1, j + 1), {})[k + 1] = p
        return out

    def is_constant(self) -> bool:
        return all(p.degree <= 0 for pl in self.c for row in pl for p in row)


def _pbracket(f: ParamLieAlgebra, x: Sequence[UniPoly], y: Sequence[UniPoly]) -> list:
    n = f.n
    out = [UniPoly(()) for _ in range(n)]
    for i in range(n):
        if x[i].is_zero():
            continue
        for j in range(n):
            if y[j].is_zero():
                continue
            xy = x[i] * y[j]
            for k in range(n):
                if not f.c[i][j][k].is_zero():
                    out[k] = out[k] + xy * f.c[i][j][k]
    return out


def validate_family(f: ParamLieAlgebra) -> list:
    """Failing triples of the Jacobi identity taken as polynomial identities in t."""
    n = f.n
    unit = [[UniPoly((1,)) if a == b else UniPoly(()) for b in range(n)] for a in range(n)]
    bad = []
    for i, j in itertools.combinations(range(n), 2):
        for k in range(n):
            if not (f.c[i][j][k] + f.c[j][i][k]).is_zero():
                bad.append(((i, j), "antisymmetry"))
    for i, j, k in itertools.combinations(range(n), 3):
        x, y, z = unit[i], unit[j], unit[k]
        terms = (_pbracket(f, x, _pbracket(f, y, z)), _pbracket(f, y, _pbracket(f, z, x)),
                 _pbracket(f, z, _pbracket(f, x, y)))
        jac = [a + b + c for a, b, c in zip(*terms)]
        if any(not p.is_zero() for p in jac):
            bad.append(((i, j, k), tuple(poly_str(p) for p in jac)))
    return bad


def evaluate_family(f: ParamLieAlgebra, eps) -> LieAlgebra:
    eps = la.to_fraction(eps)
    tensor = [[[f.c[i][j][k](eps) for k in range(f.n)] for j in range(f.n)] for i in range(f.n)]
    g = LieAlgebra.from_tensor(tensor, f"{f.name}@t={eps}")
    report = validate(g)
    if not report.ok:
        raise ValidationFailed(
            f"fiber t={eps} of {f.name} is not a Lie algebra", report.failing_triples)
    return g


@dataclass(frozen=True)
class MonotonicityReport:
    order: int
    sample_dims: tuple  # ((eps, dim), ...)
    generic_dim: int
    limit_dim: int

    @property
    def monotone(self) -> bool:
        return self.generic_dim <= self.limit_dim

    @property
    def strict(self) -> bool:
        return self.generic_dim < self.limit_dim


def dimension_monotonicity_check(f: ParamLieAlgebra, k: int,
                                 samples: Sequence = DEFAULT_SAMPLES, *,
                                 cap=None) -> MonotonicityReport:
    samples = [la.to_fraction(s) for s in samples]
    if not samples:
        raise PreconditionViolated("need at least one sample point")
    if any(s == 0 for s in samples):
        raise PreconditionViolated("sample points must be nonzero")
    dims = tuple((s, leibniz_derivation_space(evaluate_family(f, s), k, cap=cap).dim)
                 for s in samples)
    distinct = {d for _, d in dims}
    if len(distinct) != 1:
        raise GenericDimUnstable(
            "dim LDer_%d differs across samples: %s"
            % (k, ", ".join(f"t={s}: {d}" for s, d in dims)))
    limit = leibniz_derivation_space(evaluate_family(f, 0), k, cap=cap).dim
    return MonotonicityReport(k, dims, distinct.pop(), limit)
