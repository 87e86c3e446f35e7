"""
Exceptional classes and the envelope
====================================

Walk the mutation tree, check the Markov equation, then sample the
envelope that bounds the chamber from above.
"""
from fractions import Fraction

from fiberstab.dlp import EnvelopeModel, delta_at
from fiberstab.exceptional import enumerate_exceptional, markov_triples
from fiberstab.ktheory import discriminant, euler_p2

# classes with slope in [0, 1), sorted by rank
classes = enumerate_exceptional(89)
for e in classes:
    print(f"rank {e.rank:3d}  slope {str(e.mu):6s}  Delta {discriminant(e.v)}  chi(E,E) = {euler_p2(e.v, e.v)}")

# every mutation triple solves x^2 + y^2 + z^2 = 3xyz
for t in markov_triples(200):
    print(sorted(t))

# the envelope at a few slopes, for growing order
for n in (1, 2, 5, 13, 34):
    m = EnvelopeModel.build(n)
    row = [delta_at(m, Fraction(k, 8)) for k in range(9)]
    print(n, " ".join(f"{float(x):.4f}" for x in row))
