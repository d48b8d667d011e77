"""Finite groups acting on compact Riemann surfaces and curves over finite fields.

Subpackages and modules:

    groups          multiplication-table groups and the JSONL catalog
    signatures      Fuchsian signatures, Riemann-Hurwitz and bounds
    search          generating vectors, hom counts and classification by genus
    maximality      whether an action extends to a larger one
    superelliptic   reduced automorphism groups of superelliptic curves
    weierstrass     Weierstrass gap sequences
    cli             the ``curveaut`` command
"""
__version__ = "0.1.0"
