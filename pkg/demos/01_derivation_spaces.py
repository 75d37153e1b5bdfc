"""
Leibniz-derivations of the Heisenberg algebra
=============================================

Derivations, pre-derivations and higher orders, all computed exactly.
"""

from lieder import linalg as la
from lieder.catalog import builtin
from lieder.leibniz import inner_derivations, leibniz_derivation_space, verify_chain


def show(m):
    for row in m:
        print("  " + " ".join(f"{str(x):>4}" for x in row))

h3 = builtin("heisenberg_3").algebra
print(h3)

# order 1 is Der(h3); from order 2 on every endomorphism qualifies, since
# all brackets of three elements vanish in a class-2 algebra
for k in range(1, 4):
    print(f"dim LDer_{k}(h3) =", leibniz_derivation_space(h3, k).dim)

# basis of Der(h3), as 3x3 matrices
for m in leibniz_derivation_space(h3, 1).matrices():
    show(m)
    print()

print("dim Inn(h3) =", inner_derivations(h3).dim)

rep = verify_chain(h3, 3)
print(rep.dims, rep.ok)

# membership of a single operator
print(la.diag([1, 1, 2]) in leibniz_derivation_space(h3, 1))   # True
print(la.diag([1, 1, 5]) in leibniz_derivation_space(h3, 1))   # False
