"""
Deciding nilpotency with an invertible Leibniz-derivation
=========================================================

A Lie algebra is nilpotent exactly when some LDer_k contains an invertible
map.  The search returns that map as a certificate which anyone can
re-check with exact arithmetic.
"""

import json

from lieder.catalog import builtin
from lieder.nilpotency import (certificate_to_json, minimal_invertible_order,
                               nilpotency_by_lcs, nilpotency_by_main_theorem,
                               verify_certificate_json)

for name in ["heisenberg_3", "filiform_n4", "sl2", "aff1", "dixmier_lister_8"]:
    g = builtin(name).algebra
    cert = nilpotency_by_main_theorem(g)
    print(f"{name:18s} {cert.verdict:13s} lcs says {nilpotency_by_lcs(g).verdict}")

# the Dixmier-Lister algebra has only nilpotent derivations, so order 1
# never works; order 2 does
dl = builtin("dixmier_lister_8").algebra
k, ev = minimal_invertible_order(dl)
print("minimal order", k, "det", ev.det)

doc = certificate_to_json(nilpotency_by_main_theorem(builtin("filiform_n4").algebra))
print(json.dumps({key: doc[key] for key in ("verdict", "order", "det")}))
print("problems:", verify_certificate_json(doc))

# one changed entry and the certificate is refused
doc["matrix"][0][0] = "12345"
print("problems:", verify_certificate_json(doc))
