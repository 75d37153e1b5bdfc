"""
Semisimple and reductive algebras: nothing new beyond Der
=========================================================
"""

from lieder.catalog import builtin
from lieder.leibniz import (derivations, dimension_decomposition_check,
                            leibniz_derivation_space, radical_invariance_check,
                            star_identity_space)

sl2 = builtin("sl2").algebra
print([leibniz_derivation_space(sl2, k).dim for k in range(1, 6)])   # all 3

gl2 = builtin("gl2").algebra
der = derivations(gl2).space
print([leibniz_derivation_space(gl2, k).space == der for k in range(1, 5)])

# the identity behind it has no nonzero solution on sl2
for m in (1, 2, "1/2"):
    print("m =", m, [star_identity_space(sl2, m, k).dim for k in (2, 3)])

# sl2 + Q^2: LDer_k = Inn(sl2) + gl(Q^2), so dim 3 + 4
e = builtin("sl2_plus_abelian_2")
rep = dimension_decomposition_check(e.algebra, 3, e.summands)
print(rep.dim_lder, rep.expected_dim, rep.ok)

for name in ("gl2", "aff1", "sl2_plus_abelian_2"):
    print(name, [radical_invariance_check(builtin(name).algebra, k) for k in (1, 2, 3)])
