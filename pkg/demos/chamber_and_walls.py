"""
Points, walls and twists
========================

Classify a few slice points, trace a path through the wall over
slope 0, and push a charge out of the chamber and back again.
"""
import json
from fractions import Fraction as Q
from pathlib import Path

from fiberstab.chamber import I, CentralCharge, QComplex, SlicePoint, in_geometric_chamber, projection_f
from fiberstab.dlp import EnvelopeModel
from fiberstab.exceptional import exceptional_at_slope
from fiberstab.walls import PathSpec, apply_word, detect_crossings, geometric_point, normalize_to_geometric

m = EnvelopeModel.build(34)

for b in (QComplex(Q(1, 4)), QComplex(Q(-1, 4)), QComplex(0, Q(-1, 4))):
    p = SlicePoint(I, b)
    print(b, projection_f(p), in_geometric_chamber(p, m))

path = PathSpec.from_json(json.loads((Path(__file__).parent / "sample_path.json").read_text()))
for rec in detect_crossings(path, m):
    print(rec.to_json(), "at", projection_f(rec.witness))

# twist along O takes this charge out of the chamber
O = exceptional_at_slope(0, 1)
p = SlicePoint(QComplex(0, Q(1, 2)), QComplex(Q(1, 8), Q(-1, 4)))
z = apply_word(CentralCharge.from_slice(p), [(O, 1)])
print("after twist, geometric?", geometric_point(z, m) is not None)

word, q = normalize_to_geometric(z, m, 3)
print("recovered by", [(str(e.mu), k) for e, k in word], "->", projection_f(q))
