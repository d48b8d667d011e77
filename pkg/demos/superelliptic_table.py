"""Reduced automorphism groups as groups of Moebius maps over a finite field.

For each of the four tame rows over a few small primes, build the invariant
rational function, check it is fixed by the generators, and compare its
fibre pattern with the predicted ramification.
"""
from curveaut.superelliptic import (coefficient_field, table1_case, table1_function, verify_invariance,
                                    verify_ramification)

for cid, kw in ((1, {"m": 3}), (2, {"m": 3}), (3, {}), (4, {})):
    for p in (5, 7, 11, 13):
        if kw.get("m") == p:
            continue
        case = table1_case(cid, p, **kw)
        z = table1_function(case)
        inv = verify_invariance(case)
        ram = verify_ramification(case)
        print(f"case {cid} p={p:>2}: {case.kind:<6} |G|={case.order:>3} deg z={z.degree:>3} "
              f"field GF({coefficient_field(case).q}) invariant={inv.ok} ramification={ram.status}")
