"""Named example structures, and a generator of small random diagrams.

Infinite rings from the literature (Z, Q, R, C) are replaced by finite
rings with the same lattice shape and the same surjectivity pattern:
Z -> R x R becomes Z4 -> Z2 x Z2 along the diagonal, and the inclusion
R -> C becomes Z2 -> GF4.
"""

import random

from .diagram import diagram
from .lattice import chain, diamond, monoid_from_table
from .meadow import Meadow
from .rings import (cyclic_ring, enumerate_homs, finite_field, ring_power, ring_product)

Z2 = cyclic_ring(2)


def _meadow(name, elems, add, neg, mul, inv=None):
    pos = {e: i for i, e in enumerate(elems)}

    def table(rows):
        return [[pos[t] for t in row.split()] for row in rows]

    return Meadow(name, elems, pos["0"], pos["1"], table(add),
                  [pos[t] for t in neg.split()], table(mul),
                  None if inv is None else [pos[t] for t in inv.split()])


def example1():
    """P = {0, 1, x, a}: a pre-meadow with two singleton fibers."""
    return _meadow(
        "example1", ["0", "1", "x", "a"],
        add=["0 1 x a",
             "1 0 x a",
             "x x x a",
             "a a a a"],
        neg="0 1 x a",
        mul=["0 0 x a",
             "0 1 x a",
             "x x x a",
             "a a a a"])


def example2(with_inverse=False):
    """M = {0, 1, x, y, a}: a common meadow with fibers {0,1}, {x,y}, {a}."""
    return _meadow(
        "example2", ["0", "1", "x", "y", "a"],
        add=["0 1 x y a",
             "1 0 y x a",
             "x y x y a",
             "y x y x a",
             "a a a a a"],
        neg="0 1 x y a",
        mul=["0 0 x x a",
             "0 1 x y a",
             "x x x x a",
             "x y x y a",
             "a a a a a"],
        inv="a 1 a y a" if with_inverse else None)


def z2z2():
    return ring_product(Z2, Z2)


def _pi(R, k):
    """Projection of a product ring onto factor k."""
    return [c[k] for c in R.coords]


def _diag(src, dst):
    """n -> (n mod 2, n mod 2) for a cyclic src and dst = Z2 x Z2."""
    return [dst.elems.index(f"({k % 2},{k % 2})") for k in range(src.size)]


def flasque_z2z2():
    """Z2xZ2 -Id-> Z2xZ2, then pi_1 and pi_2: a flasque common meadow."""
    V = z2z2()
    return diagram("flasque-z2z2",
                   [("top", V), ("mid", V), ("l", Z2), ("r", Z2)],
                   {("top", "mid"): list(range(4)),
                    ("mid", "l"): _pi(V, 0),
                    ("mid", "r"): _pi(V, 1)})


def ce_pi1pi1():
    """As flasque_z2z2 but with pi_1 on both sides: flasque, not common."""
    V = z2z2()
    return diagram("ce-pi1pi1",
                   [("top", V), ("mid", V), ("l", Z2), ("r", Z2)],
                   {("top", "mid"): list(range(4)),
                    ("mid", "l"): _pi(V, 0),
                    ("mid", "r"): _pi(V, 0)})


def ce_z2_diag():
    """Z2 -diag-> Z2xZ2, pi_1 twice: every J_x for x in P_0 has a greatest
    node but J_(1,0) at mid does not, and the meadow is not flasque."""
    V = z2z2()
    return diagram("ce-z2-diag",
                   [("top", Z2), ("mid", V), ("l", Z2), ("r", Z2)],
                   {("top", "mid"): _diag(Z2, V),
                    ("mid", "l"): _pi(V, 0),
                    ("mid", "r"): _pi(V, 0)})


def z4_top():
    """Z4 -diag-> Z2xZ2, then pi_1 and pi_2: common but not flasque."""
    V = z2z2()
    Z4 = cyclic_ring(4)
    return diagram("z4-top",
                   [("top", Z4), ("mid", V), ("l", Z2), ("r", Z2)],
                   {("top", "mid"): _diag(Z4, V),
                    ("mid", "l"): _pi(V, 0),
                    ("mid", "r"): _pi(V, 1)})


def closure_analog():
    """Z4 -diag-> Z2xZ2, then (inclusion o pi_1) into GF4 and pi_2 into Z2."""
    V = z2z2()
    Z4 = cyclic_ring(4)
    F4 = finite_field(2, 2)
    return diagram("closure-analog",
                   [("top", Z4), ("mid", V), ("l", F4), ("r", Z2)],
                   {("top", "mid"): _diag(Z4, V),
                    ("mid", "l"): [F4.elems.index(str(c[0])) for c in V.coords],
                    ("mid", "r"): _pi(V, 1)})


def defect_monoid():
    """S = {0, s, a} with s*s = a: commutative, not idempotent."""
    return monoid_from_table(["0", "s", "a"],
                             [[0, 1, 2], [1, 2, 2], [2, 2, 2]], "0", "a", name="S3")


def mr_fixture_rings():
    """Rings whose M(R) is checked exhaustively."""
    return {
        "Z2": Z2,
        "Z3": cyclic_ring(3),
        "Z4": cyclic_ring(4),
        "Z6": cyclic_ring(6),
        "Z2^2": ring_power(Z2, 2),
        "Z2^3": ring_power(Z2, 3),
        "Z2^4": ring_power(Z2, 4),
        "Z2xZ3": ring_product(Z2, cyclic_ring(3)),
    }


def named_diagrams():
    return {
        "flasque-z2z2": flasque_z2z2(),
        "ce-pi1pi1": ce_pi1pi1(),
        "ce-z2-diag": ce_z2_diag(),
        "z4-top": z4_top(),
        "closure-analog": closure_analog(),
    }


def lattices():
    return {"chain2": chain(2), "chain3": chain(3), "diamond": diamond()}


# -- random diagrams --------------------------------------------------------

def random_ring_pool():
    Z = cyclic_ring
    return [Z(2), Z(3), Z(4), Z(5), Z(6), ring_power(Z(2), 2), finite_field(2, 2),
            ring_product(Z(2), Z(3))]


_SHAPES = {
    "chain2": (["n0"], []),
    "chain3": (["n0", "n1"], [("n0", "n1")]),
    "chain4": (["n0", "n1", "n2"], [("n0", "n1"), ("n1", "n2")]),
    "diamond": (["n0", "n1", "n2"], [("n0", "n1"), ("n0", "n2")]),
}

_HOM_CACHE = {}


def _homs(R, S):
    key = (R.name, S.name)
    if key not in _HOM_CACHE:
        _HOM_CACHE[key] = enumerate_homs(R, S)
    return _HOM_CACHE[key]


def random_diagram(rng, pool=None, shape=None):
    """A validated diagram with at most 4 nodes (bottom included).

    Rings are drawn from ``pool`` and every edge gets a hom chosen
    uniformly among all homs between its end rings; draws are repeated
    until every edge has at least one hom.  ``rng`` is a random.Random.
    """
    pool = pool or random_ring_pool()
    shape = shape or rng.choice(sorted(_SHAPES))
    ids, edges = _SHAPES[shape]
    while True:
        rings = {nid: rng.choice(pool) for nid in ids}
        maps = {}
        for hi, lo in edges:
            hs = _homs(rings[hi], rings[lo])
            if not hs:
                break
            maps[(hi, lo)] = rng.choice(hs)
        else:
            return diagram(f"random-{shape}", list(rings.items()), maps, bottom="a")


def random_diagrams(count, seed=0):
    rng = random.Random(seed)
    pool = random_ring_pool()
    return [random_diagram(rng, pool) for _ in range(count)]
