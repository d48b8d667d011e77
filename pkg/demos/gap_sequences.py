"""Weierstrass gap sequences and their weights for small genus."""
from collections import Counter

from curveaut.weierstrass import enumerate_gap_sequences, max_weight, weight

for g in range(1, 9):
    seqs = enumerate_gap_sequences(g)
    hist = Counter(weight(s) for s in seqs)
    print(f"g={g}: {len(seqs):>3} sequences, weights {dict(sorted(hist.items()))}, max {max_weight(g)}")

print("genus 4:")
for s in enumerate_gap_sequences(4):
    print(f"  gaps {s.gaps}  non-gaps {s.nongaps}  weight {weight(s)}")
