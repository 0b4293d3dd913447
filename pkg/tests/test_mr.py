import itertools
import time

import pytest

from meadows.errors import SizeError
from meadows.fixtures import mr_fixture_rings
from meadows.flasque import is_flasque
from meadows.formats import emit_dot
from meadows.lattice import boolean_lattice, find_lattice_isomorphism
from meadows.meadow import (Level, classify, compute_J, fiber_ring, fibers, greatest_node,
                            node_name, synthesize_inverse)
from meadows.mr import (build_MR, complement_indicator, greatest_J_in_MR, mr_carrier_size,
                        recipe_ideal, verify_MR_common)
from meadows.rings import (check_hom, cyclic_ring, enumerate_ideals, find_isomorphism,
                           ring_power, ring_product)

import oracles

Z2, Z3, Z5 = cyclic_ring(2), cyclic_ring(3), cyclic_ring(5)


def test_mr_z2():
    mr = build_MR(Z2)
    assert mr.labels == ["(0)", "(1)"]
    assert [Q.size for Q in mr.quotients] == [2, 1]


def test_mr_z6_diamond():
    mr = build_MR(cyclic_ring(6))
    D = mr.diagram
    assert len(D.nodes) == 4
    assert len(D.lattice.covers()) == 4
    assert sorted(Q.size for Q in mr.quotients) == [1, 2, 3, 6]
    assert find_isomorphism(D.ring("(3)"), Z3) is not None
    assert find_isomorphism(D.ring("(2)"), Z2) is not None
    assert D.lattice.elems[D.lattice.zero] == "(0)"
    assert D.lattice.elems[D.lattice.a] == "(1)"


def test_mr_homs_are_surjective_projections():
    mr = build_MR(ring_power(Z2, 3))
    for h in mr.diagram.homs.values():
        assert check_hom(h).ok
        assert h.is_surjective()


def test_z2_z3_z5():
    R = ring_product(Z2, Z3, Z5)
    t = time.perf_counter()
    mr = build_MR(R)
    M = mr.meadow()
    assert sorted((Q.size for Q in mr.quotients), reverse=True) == [30, 15, 10, 6, 5, 3, 2, 1]
    assert find_lattice_isomorphism(mr.diagram.lattice, boolean_lattice(3)) is not None
    assert is_flasque(M)
    assert classify(M).level == Level.COMMON_MEADOW
    assert time.perf_counter() - t < 5
    sizes = {Q.size: Q for Q in mr.quotients}
    for n, parts in ((15, (Z3, Z5)), (10, (Z2, Z5)), (6, (Z2, Z3))):
        assert find_isomorphism(sizes[n], ring_product(*parts)) is not None


def test_order_matches_reverse_inclusion():
    R = cyclic_ring(12)
    mr = build_MR(R)
    L = mr.diagram.lattice
    for i, I in enumerate(mr.ideals):
        for j, J in enumerate(mr.ideals):
            zi, zj = L.index(mr.labels[i]), L.index(mr.labels[j])
            assert L.le(zj, zi) == I.issubset(J)


def test_carrier_size_formula():
    for R in mr_fixture_rings().values():
        mr = build_MR(R)
        assert mr.meadow().size == mr_carrier_size(R, mr.ideals) == \
            sum(R.size // len(set(I)) for I in oracles.ideals_by_subsets(R))


def test_caps():
    with pytest.raises(SizeError):
        build_MR(ring_power(Z2, 4), max_ideals=8)
    with pytest.raises(SizeError):
        build_MR(ring_power(Z2, 4), max_carrier=50)


def _ideal(R, tokens):
    for I in enumerate_ideals(R):
        if set(I.tokens()) == set(tokens):
            return I
    raise AssertionError(tokens)


def test_greatest_J_complement_recipe():
    R = ring_power(Z2, 3)
    g = greatest_J_in_MR(R, "(1,0,1)")
    assert g.ideal == _ideal(R, ["(0,0,0)", "(0,1,0)"])
    assert g.ideal == recipe_ideal(R, "(1,0,1)")
    assert R.elems[complement_indicator(R, "(1,0,1)")] == "(0,1,0)"
    assert len(greatest_J_in_MR(R, "(1,1,1)").ideal) == 1
    assert len(greatest_J_in_MR(R, "(0,0,0)").ideal) == R.size


def test_greatest_J_agrees_with_meadow_scan():
    R = cyclic_ring(6)
    mr = build_MR(R)
    M = mr.meadow()
    top = int(M.zero_of[M.zero])
    for x in fibers(M)[top]:
        r = R.index(M.elems[x].split(".", 1)[1])
        g = greatest_J_in_MR(R, r)
        assert mr.node_of(g.ideal) == node_name(M, greatest_node(M, compute_J(M, x)))
        assert node_name(M, oracles.greatest(M, oracles.J_set(M, x))) == mr.node_of(g.ideal)


@pytest.mark.parametrize("name", sorted(mr_fixture_rings()))
def test_verify_common_fixture_rings(name):
    R = mr_fixture_rings()[name]
    rep = verify_MR_common(R)
    assert rep and not rep.mismatches and not rep.failures
    assert is_flasque(build_MR(R).meadow())


def test_z4_chain():
    mr = build_MR(cyclic_ring(4))
    assert mr.labels == ["(0)", "(2)", "(1)"]
    assert verify_MR_common(cyclic_ring(4))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_recipe_on_boolean_rings(n):
    R = ring_power(Z2, n)
    for x in range(R.size):
        assert greatest_J_in_MR(R, x).ideal == recipe_ideal(R, x)


def test_recipe_on_z2_z3():
    R = ring_product(Z2, Z3)
    for x in range(R.size):
        assert greatest_J_in_MR(R, x).ideal == recipe_ideal(R, x)


def test_fiber_rings_are_quotients():
    R = ring_product(Z2, Z3)
    mr = build_MR(R)
    M = mr.meadow()
    for z in M.nodes:
        lab = node_name(M, z)
        Q = mr.quotients[mr.labels.index(lab)]
        assert find_isomorphism(fiber_ring(M, z), Q) is not None


def test_dot_of_mr():
    dot = emit_dot(build_MR(ring_product(Z2, Z3, Z5)))
    assert dot.count("->") == 12
    assert dot.count("label=") == 8
    assert dot == emit_dot(build_MR(ring_product(Z2, Z3, Z5)))


def test_synthesis_on_mr_z2_power_matches_brute_force():
    M = build_MR(ring_power(Z2, 3)).meadow()
    assert list(synthesize_inverse(M).inverse) == oracles.brute_inverse(M)
