import numpy as np
import pytest

from meadows.diagram import meadow_from_diagram, ring_meadow_diagram
from meadows.errors import DomainError, FormatError
from meadows.fixtures import ce_pi1pi1, example1, example2, flasque_z2z2, z4_top
from meadows.flasque import product_meadow
from meadows.lattice import chain, diamond, find_lattice_isomorphism
from meadows.meadow import (Level, Meadow, check_common_axioms, check_premeadow, classify,
                            compute_J, fiber_ring, fibers, greatest_node, node_name, ref,
                            resolve, synthesize_inverse, transition_map, zero_monoid)
from meadows.mr import build_MR
from meadows.rings import check_hom, check_ring_axioms, cyclic_ring, find_isomorphism

import oracles


def tok(M, xs):
    return {M.elems[x] for x in xs}


def test_example1_is_premeadow_only():
    M = example1()
    assert check_premeadow(M).ok
    assert not oracles.premeadow_laws(M) - {"distributivity"}
    rep = classify(M)
    assert rep.level == Level.PRE_MEADOW
    assert "P_x" in rep.witnesses[0].detail and "P_a" in rep.witnesses[0].detail


def test_example2_axioms_and_inverse():
    M = example2()
    assert check_premeadow(M).ok
    rep = classify(M)
    assert rep.level == Level.COMMON_MEADOW
    inv = {M.elems[x]: M.elems[y] for x, y in enumerate(rep.inverse)}
    assert inv == {"0": "a", "1": "1", "x": "a", "y": "y", "a": "a"}
    assert list(rep.inverse) == oracles.brute_inverse(M)
    assert oracles.common_laws_hold(M, list(rep.inverse))


def test_example2_mutation_is_caught():
    M = example2()
    add = np.array(M.add)
    one, x = M.index("1"), M.index("x")
    add[one, x] = add[x, one] = x
    bad = Meadow("mutant", M.elems, M.zero, M.one, add, M.neg, M.mul)
    rep = check_premeadow(bad)
    assert not rep.ok
    assert rep.first.witness
    assert oracles.premeadow_laws(bad)
    assert classify(bad).level == Level.NOT_PRE_MEADOW


def test_example2_fibers_and_zero_monoid():
    M = example2()
    fb = fibers(M)
    assert {frozenset(tok(M, xs)) for xs in fb.values()} == \
        {frozenset({"0", "1"}), frozenset({"x", "y"}), frozenset({"a"})}
    L = zero_monoid(M)
    assert find_lattice_isomorphism(L, chain(3)) is not None
    assert L.elems[L.top_down_order()[1]] == "x"


def test_example2_fiber_ring_and_transition():
    M = example2()
    x = M.index("x")
    R = fiber_ring(M, x)
    assert R.elems == ("x", "y")
    assert R.elems[R.zero] == "x" and R.elems[R.one] == "y"
    assert check_ring_axioms(R).ok
    f = transition_map(M, x, M.zero)
    assert [f.dst.elems[v] for v in f.map] == ["x", "y"]
    assert check_hom(f).ok
    ident = transition_map(M, x, x)
    assert list(ident.map) == [0, 1]
    a = M.index("a")
    assert list(transition_map(M, a, M.zero).map) == [0, 0]
    with pytest.raises(DomainError):
        transition_map(M, M.zero, x)


def test_J_sets_example2():
    M = example2()
    J1 = compute_J(M, M.index("1"))
    assert tok(M, J1) == {"0", "x", "a"}
    assert greatest_node(M, J1) == M.zero
    assert tok(M, compute_J(M, M.zero)) == {"a"}


def test_ring_over_chain_has_two_fibers():
    for R in (cyclic_ring(4), cyclic_ring(5)):
        M = meadow_from_diagram(ring_meadow_diagram(R))
        assert sorted(len(v) for v in fibers(M).values()) == [1, R.size]
        assert find_lattice_isomorphism(zero_monoid(M), chain(2)) is not None


def test_counterexample_diagnostic():
    M = meadow_from_diagram(ce_pi1pi1())
    res = synthesize_inverse(M)
    assert not res.ok
    bad = {ref(M, x): {node_name(M, z) for z in mx} for x, mx in res.failures}
    assert bad["(1,0)@mid"] == {"l", "r"}
    x = resolve(M, "(1,0)@mid")
    assert oracles.greatest(M, oracles.J_set(M, x)) is None
    assert classify(M).level == Level.PRE_MEADOW_WITH_A
    assert oracles.brute_inverse(M) is None


def test_mr_z6_inverse_of_two():
    M = build_MR(cyclic_ring(6)).meadow()
    x = resolve(M, "2@top")
    res = synthesize_inverse(M)
    assert res.ok
    assert node_name(M, res.greatest[x]) == "(3)"
    assert ref(M, res.inverse[x]) == "2@(3)"
    R = fiber_ring(M, resolve(M, "0@(3)"))
    assert find_isomorphism(R, cyclic_ring(3)) is not None
    assert sorted(len(v) for v in fibers(M).values()) == [1, 2, 3, 6]


@pytest.mark.parametrize("make", [example2, flasque_z2z2, z4_top,
                                  lambda: product_meadow(cyclic_ring(6), diamond())])
def test_synthesis_matches_brute_force(make):
    v = make()
    M = v if isinstance(v, Meadow) else meadow_from_diagram(v)
    res = synthesize_inverse(M)
    brute = oracles.brute_inverse(M)
    assert (res.inverse is None) == (brute is None)
    if brute is not None:
        assert list(res.inverse) == brute
        assert check_common_axioms(M, res.inverse).ok
        assert oracles.common_laws_hold(M, brute)


def test_common_axioms_catch_bad_inverse():
    M = example2()
    inv = [M.index(t) for t in ("a", "1", "a", "y", "a")]
    assert check_common_axioms(M, inv).ok
    inv[M.zero] = M.zero
    rep = check_common_axioms(M, inv)
    assert rep.failed("M4") or rep.failed("M1")


def test_supplied_inverse_route():
    M = meadow_from_diagram(z4_top())
    res = synthesize_inverse(M)
    Mi = M.with_inverse(res.inverse)
    rep = classify(Mi)
    assert rep.level == Level.COMMON_MEADOW and rep.route == "supplied"


def test_resolve_aliases_and_errors():
    M = meadow_from_diagram(flasque_z2z2())
    assert ref(M, resolve(M, "0@bottom")) == "0@a"
    assert ref(M, resolve(M, "(1,1)@top")) == "(1,1)@top"
    with pytest.raises(DomainError):
        resolve(M, "5@top")


def test_meadow_format_errors():
    with pytest.raises(FormatError):
        Meadow("m", ["0", "0"], 0, 0, [[0, 0], [0, 0]], [0, 0], [[0, 0], [0, 0]])
    with pytest.raises(FormatError):
        Meadow("m", ["0"], 0, 0, [[1]], [0], [[0]])


def test_not_idempotent_zero_flagged():
    # 0*0 = u with u*u != u: fails before any lattice is built
    elems = ["0", "u"]
    add = [[0, 1], [1, 1]]
    mul = [[1, 1], [1, 0]]
    M = Meadow("odd", elems, 0, 0, add, [0, 1], mul)
    assert classify(M).level == Level.NOT_PRE_MEADOW
