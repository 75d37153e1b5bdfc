"""
Explicit operators: the order ceil(c/2) map and strictness witnesses
====================================================================
"""

from lieder import linalg as la
from lieder.catalog import builtin
from lieder.leibniz import leibniz_derivation_space
from lieder.nilpotency import (construct_semisimple_lder, construct_strict_witness,
                               grading_check)


def show(m):
    for row in m:
        print("  " + " ".join(f"{str(x):>4}" for x in row))

n4 = builtin("filiform_n4").algebra

# identity on a complement of gamma_{q+1}, (q+1) on gamma_{q+1}
q, p = construct_semisimple_lder(n4)
print("q =", q)
show(p)
print("det", la.det(p))
print(p in leibniz_derivation_space(n4, q))

# its eigenspaces grade the k-bracket
rep = grading_check(n4, p, q)
print([(str(a), s.dim) for a, s in rep.decomposition.parts], rep.passed)

# something in LDer_3 that is not in LDer_2
w = construct_strict_witness(n4, 3, 2)
print("u =", [str(x) for x in w.u], "z =", [str(x) for x in w.z])
show(w.matrix)
print(w.matrix in leibniz_derivation_space(n4, 3), w.matrix in leibniz_derivation_space(n4, 2))
