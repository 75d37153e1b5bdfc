from fractions import Fraction as F

import pytest

from lieder import linalg as la
from lieder.errors import LiederError
from lieder.catalog import builtin, standard_catalog
from lieder.liealg import (LieAlgebra, ad, bracket, center, derived_series,
                           killing_form, lcs_term, lower_central_series,
                           nested_bracket, nested_bracket_basis, nilpotency_class,
                           radical, restrict, span_brackets, structural_predicates,
                           upper_central_series, validate)

H3 = builtin("heisenberg_3").algebra
N4 = builtin("filiform_n4").algebra
SL2 = builtin("sl2").algebra


def test_validate_builtin_catalog():
    for e in standard_catalog():
        assert validate(e.algebra).ok, e.algebra.name


def test_validate_reports_jacobi_failure():
    g = LieAlgebra.from_brackets(3, {(1, 2): {1: 1}, (2, 3): {2: 1}, (1, 3): {3: -1}}, "bad")
    rep = validate(g)
    assert rep.antisymmetry_ok and not rep.jacobi_ok
    (triple, jac), = rep.failing_triples
    assert triple == (0, 1, 2)
    # [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = e1 + e2 + e3
    assert jac == (1, 1, 1)


def test_validate_reports_antisymmetry_failure():
    c = [[[F(0)] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = F(1)
    rep = validate(LieAlgebra.from_tensor(c))
    assert not rep.antisymmetry_ok and rep.failing_pairs == ((0, 1),)


def test_brackets_h3():
    e1, e2, e3 = (H3.basis_vector(i) for i in range(3))
    assert bracket(H3, e1, e2) == e3
    assert bracket(H3, e2, e1) == la.vec_scale(-1, e3)
    assert nested_bracket(H3, [e1, e1, e2]) == (0, 0, 0)
    assert nested_bracket_basis(H3, [0, 1]) == e3


def test_nested_bracket_is_right_nested():
    xs = [N4.basis_vector(i) for i in (0, 0, 1)]
    # [e1, [e1, e2]] = [e1, e3] = e4
    assert nested_bracket(N4, xs) == N4.basis_vector(3)


def test_ad_h_on_sl2():
    assert ad(SL2, SL2.basis_vector(0)) == la.diag([0, 2, -2])


def test_series_h3_n4():
    assert lower_central_series(H3).dims == (3, 1, 0)
    assert lower_central_series(N4).dims == (4, 2, 1, 0)
    assert derived_series(N4).dims == (4, 2, 0)
    assert upper_central_series(N4).dims == (0, 1, 2, 4)
    assert nilpotency_class(H3) == 2 and nilpotency_class(N4) == 3
    assert nilpotency_class(SL2) is None
    assert lower_central_series(SL2).dims == (3,)


def test_lcs_recursive_matches_span_of_nested_brackets():
    import itertools
    for g in (H3, N4, builtin("dixmier_lister_8").algebra):
        for k in range(1, 4):
            spanned = la.Subspace.span(
                [nested_bracket_basis(g, idx) for idx in itertools.product(range(g.n), repeat=k)],
                g.n)
            assert lcs_term(g, k) == spanned


def test_killing_form_sl2():
    assert killing_form(SL2) == la.as_matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])


def test_radical():
    assert radical(SL2).dim == 0
    assert radical(builtin("gl2").algebra) == center(builtin("gl2").algebra)
    assert radical(builtin("aff1").algebra).dim == 2
    assert radical(H3).dim == 3
    g = builtin("sl2_plus_abelian_2").algebra
    assert radical(g).dim == 2


def test_predicates():
    p = structural_predicates(SL2)
    assert p.is_semisimple and p.is_perfect and p.is_reductive and p.is_centerless
    assert not p.is_solvable
    q = structural_predicates(builtin("gl2").algebra)
    assert q.is_reductive and not q.is_semisimple and not q.is_perfect
    r = structural_predicates(builtin("aff1").algebra)
    assert r.is_solvable and not r.is_nilpotent and r.is_centerless


def test_span_brackets_and_center():
    full = la.Subspace.full(3)
    assert span_brackets(H3, full, full) == la.Subspace.span([[0, 0, 1]], 3)
    assert center(H3) == la.Subspace.span([[0, 0, 1]], 3)


def test_restrict():
    g = builtin("sl2_plus_abelian_2").algebra
    s = restrict(g, (0, 1, 2))
    assert s.c == SL2.c
    with pytest.raises(LiederError):
        restrict(N4, (0, 2))  # [e1, e3] = e4 escapes
