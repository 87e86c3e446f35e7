"""
Twist words and line bundles
============================

Half twists as words in alpha and beta, the cube relation, and the
gluing data of line bundles on the three components.
"""
from fractions import Fraction as Q

from fiberstab.autgroup import express_twist_as_word, from_word, gamma13_image, verify_braid_relation
from fiberstab.exceptional import enumerate_exceptional
from fiberstab.picard import GluingData, glue_on_X, normal_form

print("(ab)^3 = 1:", verify_braid_relation())
print("image of ab:", gamma13_image(from_word("ab")))

for e in enumerate_exceptional(2, -1, 2):
    w = express_twist_as_word(e, 8)
    print(f"slope {str(e.mu):5s} rank {e.rank}: {w.word_str()}")

g = GluingData((1, 2, 3), (2, 3, Q(1, 6)))
print(normal_form(g).to_json())
for m in range(-2, 3):
    print(m, glue_on_X(m, GluingData((-m, -m, -m))), glue_on_X(m, GluingData((-m, -m, -m), (2, 1, 1))))
