"""
Dimensions can only go up under contraction
===========================================

The family [e1, e2] = t e3 is h3 for t != 0 and abelian at t = 0.
"""

from lieder.catalog import shipped_families
from lieder.degeneration import ParamLieAlgebra, dimension_monotonicity_check

f = ParamLieAlgebra.from_brackets(3, {(1, 2): {3: "t"}}, "contraction")
for k in (1, 2):
    r = dimension_monotonicity_check(f, k)
    print(f"k={k}: generic {r.generic_dim}, limit {r.limit_dim}, strict {r.strict}")

for fam in shipped_families():
    dims = [dimension_monotonicity_check(fam, k) for k in (1, 2, 3)]
    print(fam.name, [(r.generic_dim, r.limit_dim) for r in dims])
