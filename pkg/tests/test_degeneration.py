from fractions import Fraction as F

import pytest

from lieder.catalog import builtin, shipped_families
from lieder.degeneration import (ParamLieAlgebra, dimension_monotonicity_check,
                                 evaluate_family, parse_poly, poly_str, validate_family)
from lieder.errors import GenericDimUnstable, ParseError, PreconditionViolated, ValidationFailed
from lieder.linalg import UniPoly

CONTRACTION = ParamLieAlgebra.from_brackets(3, {(1, 2): {3: "t"}}, "contraction")


def test_parse_poly():
    assert parse_poly("3/2*t^2 - t") == UniPoly((0, -1, F(3, 2)))
    assert parse_poly("t") == UniPoly((0, 1))
    assert parse_poly("-2") == UniPoly((-2,))
    assert poly_str(parse_poly("t^2 + 1")) == "t^2 + 1"
    for bad in ("", "t*", "2**t", "s", "t^"):
        with pytest.raises(ParseError):
            parse_poly(bad)


def test_evaluate_family():
    assert evaluate_family(CONTRACTION, 1).c == builtin("heisenberg_3").algebra.c
    assert evaluate_family(CONTRACTION, 0).is_abelian()
    half = evaluate_family(CONTRACTION, F(1, 2))
    assert half.c[0][1][2] == F(1, 2)


def test_monotonicity_contraction():
    r1 = dimension_monotonicity_check(CONTRACTION, 1)
    assert (r1.generic_dim, r1.limit_dim, r1.monotone, r1.strict) == (6, 9, True, True)
    r2 = dimension_monotonicity_check(CONTRACTION, 2)
    assert (r2.generic_dim, r2.limit_dim, r2.monotone, r2.strict) == (9, 9, True, False)


def test_constant_family():
    f = ParamLieAlgebra.from_brackets(3, {(1, 2): {3: "1"}}, "const")
    assert f.is_constant()
    r = dimension_monotonicity_check(f, 2)
    assert r.generic_dim == r.limit_dim and not r.strict


def test_shipped_families_monotone():
    fams = shipped_families()
    assert {f.name for f in fams} >= {"heisenberg_contraction"}
    for f in fams:
        assert validate_family(f) == []
        for k in (1, 2, 3):
            r = dimension_monotonicity_check(f, k)
            assert r.monotone, (f.name, k)
            assert len({d for _, d in r.sample_dims}) == 1


def test_generic_dim_unstable():
    # t = 1 gives h3 (dim Der 6), t = 0 is excluded, but a family whose
    # bracket vanishes at t = 2 jumps there
    f = ParamLieAlgebra.from_brackets(3, {(1, 2): {3: "t - 2"}}, "jumpy")
    with pytest.raises(GenericDimUnstable):
        dimension_monotonicity_check(f, 1, [1, 2])


def test_bad_samples_and_families():
    with pytest.raises(PreconditionViolated):
        dimension_monotonicity_check(CONTRACTION, 1, [0, 1])
    bad = ParamLieAlgebra.from_brackets(3, {(1, 2): {1: "t"}, (2, 3): {2: "1"},
                                            (1, 3): {3: "-1"}}, "bad")
    assert validate_family(bad)
    with pytest.raises(ValidationFailed):
        evaluate_family(bad, 1)
