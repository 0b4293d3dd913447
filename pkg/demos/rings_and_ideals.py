"""
Finite rings, ideals and quotients
==================================

Rings are stored as addition and multiplication tables over the indices
0..n-1. Everything else (ideals, quotients, homomorphisms) is read off
those tables.
"""

from meadows import (check_ring_axioms, cyclic_ring, enumerate_homs, enumerate_ideals,
                     finite_field, quotient, ring_product)

Z6 = cyclic_ring(6)
print(Z6, "satisfies the ring axioms:", bool(check_ring_axioms(Z6)))

# Z6 has four ideals: (0), (2), (3) and the whole ring (1)
for I in enumerate_ideals(Z6):
    print(f"  ideal {I.label:>4}  members {I.tokens()}  quotient size {quotient(Z6, I)[0].size}")

# GF(4) elements are integer codes of polynomials over Z2
F4 = finite_field(2, 2)
print(F4, "table of products:")
print(F4.mul)

# a product ring has idempotents, so more ideals than either factor
R = ring_product(cyclic_ring(2), cyclic_ring(3))
print(R, "has", len(enumerate_ideals(R)), "ideals")
print("homomorphisms Z6 -> Z2xZ3:", len(enumerate_homs(Z6, R)))
