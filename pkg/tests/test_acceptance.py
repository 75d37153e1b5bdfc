"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (shown in the captured
output section, ``-rA`` is on by default) and then asserts.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lieder import linalg as la
from lieder.catalog import builtin, standard_catalog
from lieder.degeneration import ParamLieAlgebra, dimension_monotonicity_check
from lieder.errors import NotADerivation
from lieder.leibniz import (derivations, leibniz_derivation_space,
                            radical_invariance_check, star_identity_space,
                            verify_bracket_closure, verify_chain,
                            verify_divisibility_inclusion)
from lieder.liealg import nilpotency_class, validate
from lieder.nilpotency import (NILPOTENT, NOT_NILPOTENT, certificate_to_json,
                               class_via_lder, construct_semisimple_lder,
                               construct_strict_witness, grading_check,
                               minimal_invertible_order, nilpotency_by_lcs,
                               nilpotency_by_main_theorem, verify_certificate_json)

from randalg import random_nilpotent

CATALOG = standard_catalog()
NILPOTENT_ENTRIES = [e for e in CATALOG if nilpotency_class(e.algebra) is not None]


def report(number: int, title: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"\n{status} criterion {number}: {title}")
    for f in failures[:10]:
        print(f"    {f}")
    assert not failures, failures


def test_criterion_01_chain():
    failures = []
    for e in CATALOG:
        g = e.algebra
        rep = verify_chain(g, 6)
        failures += [f"{g.name}: {k}" for k, ok in rep.inclusions.items() if not ok]
        for k in range(1, 7):
            if not verify_bracket_closure(leibniz_derivation_space(g, k)):
                failures.append(f"{g.name}: LDer_{k} not closed under commutator")
    report(1, "Inn <= Der <= LDer_k <= gl and commutator closure, k <= 6", failures)


def test_criterion_02_divisibility():
    failures = []
    for e in CATALOG:
        g = e.algebra
        for s, t in [(1, 2), (1, 3), (2, 4), (2, 6), (3, 6)]:
            if not verify_divisibility_inclusion(g, s, t):
                failures.append(f"{g.name}: LDer_{s} not inside LDer_{t}")
        both = (leibniz_derivation_space(g, 2).space & leibniz_derivation_space(g, 3).space)
        if not leibniz_derivation_space(g, 5).space.contains(both):
            failures.append(f"{g.name}: LDer_2 & LDer_3 not inside LDer_5")
    report(2, "divisibility and sum inclusions", failures)


def test_criterion_03_class_characterization():
    expected = {"heisenberg_3": 2, "filiform_n4": 3, "abelian_3": 1, "heisenberg_5": 2}
    failures = []
    for e in NILPOTENT_ENTRIES:
        g = e.algebra
        k = class_via_lder(g)
        c = nilpotency_class(g)
        if k != c:
            failures.append(f"{g.name}: minimal full order {k}, class {c}")
        if g.name in expected and k != expected[g.name]:
            failures.append(f"{g.name}: expected {expected[g.name]}, got {k}")
    report(3, "minimal k with LDer_k = gl equals the nilpotency class", failures)


def test_criterion_04_semisimple_construction():
    failures = []
    for e in NILPOTENT_ENTRIES:
        g = e.algebra
        q, p = construct_semisimple_lder(g)
        if la.det(p) == 0:
            failures.append(f"{g.name}: singular P")
        if p not in leibniz_derivation_space(g, q):
            failures.append(f"{g.name}: P not in LDer_{q}")
    q, p = construct_semisimple_lder(builtin("heisenberg_3").algebra)
    if (q, p) != (1, la.diag([1, 1, 2])):
        failures.append(f"heisenberg_3: got q={q}, P={p}")
    q, p = construct_semisimple_lder(builtin("filiform_n4").algebra)
    if (q, p) != (2, la.diag([1, 1, 1, 3])):
        failures.append(f"filiform_n4: got q={q}, P={p}")
    report(4, "invertible Leibniz-derivation of order ceil(c/2)", failures)


def test_criterion_05_main_theorem_dual_oracle():
    failures = []
    rng = random.Random(20240)
    algebras = [e.algebra for e in CATALOG] + [random_nilpotent(rng) for _ in range(50)]
    for g in algebras:
        cert = nilpotency_by_main_theorem(g)
        if cert.verdict != nilpotency_by_lcs(g).verdict:
            failures.append(f"{g.name}: oracles disagree")
        if cert.verdict == NILPOTENT and verify_certificate_json(certificate_to_json(cert)):
            failures.append(f"{g.name}: certificate rejected")
    for name in ("sl2", "gl2", "aff1"):
        if nilpotency_by_main_theorem(builtin(name).algebra).verdict != NOT_NILPOTENT:
            failures.append(f"{name}: not reported NotNilpotent")
    report(5, "main theorem agrees with lower central series (catalog + 50 random)", failures)


def test_criterion_06_collapse():
    failures = []
    sl2 = builtin("sl2").algebra
    dims = [leibniz_derivation_space(sl2, k).dim for k in range(1, 6)]
    if dims != [3] * 5:
        failures.append(f"sl2 dims {dims}")
    gl2 = builtin("gl2").algebra
    der = derivations(gl2).space
    for k in range(1, 5):
        sp = leibniz_derivation_space(gl2, k).space
        if sp.dim != 4 or sp != der:
            failures.append(f"gl2 k={k}: dim {sp.dim}, equals Der {sp == der}")
    ss = builtin("sl2_sl2").algebra
    d = derivations(ss).dim
    for k in range(1, 4):
        if leibniz_derivation_space(ss, k).dim != d:
            failures.append(f"sl2_sl2 k={k} differs from Der")
    report(6, "semisimple and reductive collapse to Der", failures)


def test_criterion_07_star_identity():
    failures = []
    sl2 = builtin("sl2").algebra
    ab = builtin("abelian_3").algebra
    for m in (Fraction(1), Fraction(2), Fraction(1, 2)):
        for k in (2, 3):
            if star_identity_space(sl2, m, k).dim != 0:
                failures.append(f"sl2 m={m} k={k}: nonzero solutions")
            if star_identity_space(ab, m, k).dim != 9:
                failures.append(f"abelian_3 m={m} k={k}: not all of gl")
    report(7, "star identity has only P = 0 on sl2", failures)


def test_criterion_08_radical_invariance():
    failures = []
    for name in ("gl2", "aff1", "sl2_plus_abelian_2"):
        g = builtin(name).algebra
        for k in (1, 2, 3):
            if not radical_invariance_check(g, k):
                failures.append(f"{name}: radical not LDer_{k}-invariant")
    report(8, "radical invariant under LDer_k, k <= 3", failures)


def test_criterion_09_grading():
    failures = []
    for e in NILPOTENT_ENTRIES:
        g = e.algebra
        q, p = construct_semisimple_lder(g)
        if not grading_check(g, p, q).passed:
            failures.append(f"{g.name}: grading fails at order {q}")
    h3 = builtin("heisenberg_3").algebra
    try:
        grading_check(h3, la.diag([1, 1, 5]), 1)
        failures.append("diag(1, 1, 5) on heisenberg_3 was accepted")
    except NotADerivation:
        pass
    report(9, "eigenspace grading of the constructed operators", failures)


def test_criterion_10_degeneration():
    f = ParamLieAlgebra.from_brackets(3, {(1, 2): {3: "t"}}, "contraction")
    r1 = dimension_monotonicity_check(f, 1)
    r2 = dimension_monotonicity_check(f, 2)
    failures = []
    if (r1.generic_dim, r1.limit_dim, r1.strict) != (6, 9, True):
        failures.append(f"k=1: {r1}")
    if (r2.generic_dim, r2.limit_dim, r2.monotone, r2.strict) != (9, 9, True, False):
        failures.append(f"k=2: {r2}")
    report(10, "derivation dimensions jump up under contraction", failures)


def test_criterion_11_strict_witness():
    failures = []
    for name, k, l in (("heisenberg_3", 2, 1), ("filiform_n4", 3, 2)):
        g = builtin(name).algebra
        w = construct_strict_witness(g, k, l)
        if w.matrix not in leibniz_derivation_space(g, k):
            failures.append(f"{name}: witness not in LDer_{k}")
        if w.matrix in leibniz_derivation_space(g, l):
            failures.append(f"{name}: witness lies in LDer_{l}")
    report(11, "explicit element of LDer_k outside LDer_l", failures)


def test_criterion_12_dixmier_lister():
    g = builtin("dixmier_lister_8").algebra
    failures = []
    if not validate(g).ok:
        failures.append("fails validation")
    if nilpotency_by_main_theorem(g).verdict != NILPOTENT:
        failures.append("main theorem does not say Nilpotent")
    if nilpotency_class(g) is None:
        failures.append("lower central series does not vanish")
    k, _ = minimal_invertible_order(g)
    if k < 2:
        failures.append(f"minimal invertible order {k}")
    der = derivations(g)
    mats = der.matrices()
    rng = random.Random(8)
    x8 = la.UniPoly((0,) * 8 + (1,))
    for _ in range(100):
        coeffs = [rng.randint(-50, 50) for _ in mats]
        d = la.zeros(8, 8)
        for c, m in zip(coeffs, mats):
            d = la.mat_add(d, la.mat_scale(c, m))
        if la.char_poly(d) != x8:
            failures.append(f"derivation with characteristic polynomial {la.char_poly(d)}")
            break
    report(12, "characteristically nilpotent entry needs order >= 2", failures)
