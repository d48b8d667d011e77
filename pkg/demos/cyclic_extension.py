"""A C5 action that is never maximal.

C5 acting with signature (0;5,5,5) always sits inside C10 with signature
(0;2,5,10).  The extension is visible in the vector itself: swapping two
entries is an automorphism of C5.
"""
from curveaut.groups.catalog import bundled_catalog
from curveaut.maximality import cond2_test, extension_search, maximality_verdict
from curveaut.search import iter_generating_vectors
from curveaut.signatures import Signature

cat = bundled_catalog()
G = cat.find("C5")
sig = Signature.parse("0;5,5,5")

results = [(v, cond2_test(v, cat)) for v in iter_generating_vectors(G, sig)]
v, res = results[0]
print(f"{len(results)} vectors, e.g. {v.elliptic}: {res.verdict.value} (case {res.case})")
print("all extend:", all(r.verdict.value == "extends" for _, r in results))

w = extension_search(G, sig, cat).witness
print(f"overgroup {w.overgroup.label} with signature {w.outer_signature}, index {w.rule.index}")
print("verdict:", maximality_verdict(G, sig, cat).verdict.value)
