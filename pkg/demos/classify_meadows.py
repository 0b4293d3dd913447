"""
Classifying finite structures
=============================

Given the tables of a candidate structure, ``classify`` walks up the
hierarchy: pre-meadow, pre-meadow with a unique absorbing element, and
common meadow with a total inverse.
"""

from meadows import classify, compute_J, fibers, synthesize_inverse
from meadows.fixtures import example1, example2

# four elements, two singleton fibers, so no unique absorbing element
M1 = example1()
rep = classify(M1)
print(M1.name, "->", rep.level.label)
for v in rep.witnesses:
    print("  ", v)

# five elements that carry a common meadow
M2 = example2()
rep = classify(M2)
print(M2.name, "->", rep.level.label, "via", rep.route)
for z, xs in fibers(M2).items():
    print("  fiber over", M2.elems[z], ":", [M2.elems[x] for x in xs])

# the inverse of x is computed in the fiber of the greatest node where x becomes a unit
res = synthesize_inverse(M2)
for x in range(M2.size):
    J = [M2.elems[z] for z in compute_J(M2, x)]
    print(f"  {M2.elems[x]}: J = {J}, inverse = {M2.elems[res.inverse[x]]}")
