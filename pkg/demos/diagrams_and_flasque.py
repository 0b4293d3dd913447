"""
Diagrams of rings, flasqueness and closure
==========================================

A meadow can be assembled from a lattice of rings connected by
homomorphisms. When every transition map is onto the diagram is flasque,
and on flasque meadows the inverse exists as soon as each element has a
single highest node where it becomes invertible.
"""

from meadows import (classify, decomposition_iso, flasque_closure, is_flasque,
                     is_flasque_via_top, meadow_from_diagram)
from meadows.fixtures import ce_pi1pi1, flasque_z2z2, z4_top
from meadows.meadow import node_name, ref

for make in (flasque_z2z2, ce_pi1pi1, z4_top):
    M = meadow_from_diagram(make())
    f = is_flasque(M)
    print(f"{M.name}: {M.size} elements, flasque {bool(f)} "
          f"(top route {bool(is_flasque_via_top(M))}), {classify(M).level.label}")
    if not f:
        print("   transition", " -> ".join(f.failing_pair), "misses",
              [ref(M, M.index(t)) for t in f.missing])

# the closure keeps only elements reachable from the top fiber
M = meadow_from_diagram(z4_top())
C = flasque_closure(M)
print("closure of", M.name, "has", C.size, "elements, flasque:", bool(is_flasque(C)))

# decomposition into a ring times a lattice fails here and says why
res = decomposition_iso(M)
print("decomposition:", bool(res), res.reasons)
print("nodes:", [node_name(M, z) for z in M.nodes])
