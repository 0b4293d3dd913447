"""
Zero lattices
=============

A zero lattice is an idempotent commutative monoid with an absorbing
element. Reading z <= w as z*w = z makes the identity the top and the
absorber the bottom.
"""

from meadows import boolean_lattice, chain, diamond
from meadows.lattice import find_lattice_isomorphism

for L in (chain(3), diamond(), boolean_lattice(3)):
    print(L.name, "elements", list(L.elems))
    print("  covering pairs:", [(L.elems[i], L.elems[j]) for i, j in L.covers()])
    print("  depth from the top:", list(L.depth()))

D = diamond()
l, r = D.index("x"), D.index("y")
print("meet of x and y in the diamond:", D.elems[D.meet(l, r)])
print("maximal elements of {x, y}:", [D.elems[i] for i in D.maximal_elements([l, r])])
print("greatest of {x, y}:", D.greatest([l, r]))

# the diamond is the boolean lattice on two atoms
print("diamond ~ B2:", find_lattice_isomorphism(D, boolean_lattice(2)) is not None)
