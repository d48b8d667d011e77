"""Every finite group action on a genus 2 surface, up to the catalog.

Prints one line per (group, signature) with the number of inequivalent
generating vectors and the maximality verdict.
"""
from curveaut.groups.catalog import bundled_catalog
from curveaut.maximality import maximality_verdict
from curveaut.search import classify

cat = bundled_catalog()
recs = classify(2, cat, counts=True)
print(f"{'group':>10}  {'|G|':>4}  {'signature':<16} classes  verdict")
for r in recs:
    G = cat.get(*r.catalog_id)
    v = maximality_verdict(G, r.signature, cat).verdict.value
    print(f"{r.group:>10}  {r.order:>4}  {str(r.signature):<16} {r.epi_classes:>7}  {v}")
print(f"{len(recs)} actions; the largest group has order {max(r.order for r in recs)}")
