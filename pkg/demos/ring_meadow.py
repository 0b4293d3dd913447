"""
The meadow of a ring
====================

Any finite commutative ring R gives a common meadow M(R): one fiber R/I
for each ideal I, ordered by reverse inclusion. The inverse of x lives
in the quotient by the ideal generated by the complement of x.
"""

import time

from meadows import build_MR, classify, emit_dot, fibers, is_flasque, verify_MR_common
from meadows.mr import greatest_J_in_MR, recipe_ideal
from meadows.rings import cyclic_ring, ring_power, ring_product

R = ring_product(cyclic_ring(2), cyclic_ring(3), cyclic_ring(5))
t = time.perf_counter()
mr = build_MR(R)
M = mr.meadow()
print(f"M({R.name}): {len(mr.diagram.nodes)} nodes, {M.size} elements, "
      f"{classify(M).level.label}, flasque {bool(is_flasque(M))} "
      f"({time.perf_counter() - t:.3f} s)")
print("fiber sizes:", sorted((len(v) for v in fibers(M).values()), reverse=True))
print("checked against the ring:", bool(verify_MR_common(R, mr)))

B = ring_power(cyclic_ring(2), 3)
x = B.index("(1,0,1)")
g = greatest_J_in_MR(B, x)
print("greatest node for (1,0,1) in M(Z2^3):", g.ideal.label,
      "recipe:", recipe_ideal(B, x).label)

print(emit_dot(build_MR(cyclic_ring(6))))
