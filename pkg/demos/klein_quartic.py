"""The genus 3 surface with 168 automorphisms.

Find a generating vector of PSL(2,7) for the (2,3,7) triangle group, check it
by hand, count how many there are, and ask whether the action is maximal.
"""
from curveaut.groups.catalog import bundled_catalog
from curveaut.maximality import maximality_verdict
from curveaut.search import count_epimorphism_classes, find_generating_vector
from curveaut.signatures import Signature, hurwitz_bound, rh_genus

cat = bundled_catalog()
G = cat.find("PSL(2,7)")
sig = Signature.parse("0;2,3,7")

print(f"|G| = {G.order}, Hurwitz bound for genus 3 = {hurwitz_bound(3)}")
print(f"genus from Riemann-Hurwitz: {rh_genus(sig, G.order)}")

v = find_generating_vector(G, sig)
a, b, c = v.elliptic
print(f"vector: {v.elliptic}, element orders {[int(G.element_order[x]) for x in v.elliptic]}")
print(f"a*b*c = {G.op(G.op(a, b), c)} (identity is 0), generates G: {G.generates([a, b, c])}")
print(f"vectors up to Aut(G): {count_epimorphism_classes(G, sig)}")

verdict = maximality_verdict(G, sig, cat)
print(f"maximality: {verdict.verdict.value}")
