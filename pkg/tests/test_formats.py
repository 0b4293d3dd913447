import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meadows.errors import DuplicateNameError, ParseError, StructuralError, ValidationError
from meadows.fixtures import (defect_monoid, example1, example2, named_diagrams,
                              random_diagrams)
from meadows.flasque import product_meadow
from meadows.formats import (Workspace, diagrams_equal, dumps, emit_dot, load, loads,
                             parse_text)
from meadows.lattice import boolean_lattice, chain, diamond
from meadows.meadow import Level, classify
from meadows.mr import build_MR
from meadows.rings import cyclic_ring, finite_field, ring_power, ring_product

Z2_TEXT = """\
ring Z2   # the field with two elements
elements 0 1
zero 0
one 1
add
0 1
1 0
mul
0 0
0 1
"""


def test_parse_ring_with_comments():
    R = loads(Z2_TEXT)
    assert R == cyclic_ring(2)


def test_short_row_location():
    text = """ring bad
elements 0 1 2
zero 0
one 1
add
0 1 2
1 2 0
2 0
mul
0 0 0
0 1 2
0 2 1
"""
    with pytest.raises(ParseError) as e:
        loads(text)
    assert e.value.line == 8
    assert e.value.column is not None
    assert "2 entries, expected 3" in str(e.value)


def test_unknown_token_location():
    text = Z2_TEXT.replace("1 0\nmul", "1 q\nmul")
    with pytest.raises(ParseError) as e:
        loads(text)
    assert (e.value.line, e.value.column) == (7, 3)


def test_ring_axioms_enforced():
    text = Z2_TEXT.replace("0 0\n0 1\n", "0 1\n1 1\n")
    with pytest.raises(ValidationError):
        loads(text)


def test_missing_bottom_is_structural():
    text = Z2_TEXT + "\ndiagram d\nnode top ring Z2\n"
    with pytest.raises(StructuralError):
        loads(text)


def test_diagram_with_embedded_ring_and_file_ref(tmp_path):
    (tmp_path / "z2.ring").write_text(Z2_TEXT)
    (tmp_path / "d.diagram").write_text(
        "diagram d\nnode top ring @z2.ring\nbottom a\n")
    D = load(tmp_path / "d.diagram")
    assert list(D.nodes) == ["top", "a"]
    assert D.ring("top") == cyclic_ring(2)


def test_map_lines_required():
    text = Z2_TEXT + "diagram d\nnode top ring Z2\nnode mid ring Z2\nbottom a\nedge top mid\n"
    with pytest.raises(ParseError, match="no map line"):
        loads(text)


def test_example2_file_classifies_common():
    M = loads(dumps(example2()))
    assert classify(M).level == Level.COMMON_MEADOW


def test_non_premeadow_rejected_when_validating():
    text = dumps(example2()).replace("1 0 y x a", "1 0 x x a", 1)
    with pytest.raises(ValidationError):
        loads(text)
    assert loads(text, validate=False).size == 5


@pytest.mark.parametrize("value", [
    cyclic_ring(6), ring_power(cyclic_ring(2), 3), finite_field(2, 2), example1(),
    example2(), example2(with_inverse=True), product_meadow(finite_field(2, 2), chain(3)),
    diamond(), defect_monoid(), boolean_lattice(3)])
def test_round_trip_values(value):
    text = dumps(value)
    back = loads(text)
    assert back == value
    assert dumps(back) == text


@pytest.mark.parametrize("name", sorted(named_diagrams()))
def test_round_trip_diagrams(name):
    D = named_diagrams()[name]
    E = loads(dumps(D))
    assert diagrams_equal(D, E)
    assert dumps(E) == dumps(D)


def test_round_trip_mr_with_named_bottom():
    mr = build_MR(ring_product(cyclic_ring(2), cyclic_ring(3)))
    E = loads(dumps(mr))
    assert diagrams_equal(mr.diagram, E)
    assert "\nbottom ((1,1)) ring Z2xZ3/((1,1))\n" in dumps(mr)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip_random_diagrams(seed):
    D = random_diagrams(1, seed=seed)[0]
    assert diagrams_equal(D, loads(dumps(D)))


def test_dot_shapes():
    d6 = emit_dot(build_MR(cyclic_ring(6)))
    assert d6.count("label=") == 4 and d6.count("->") == 4
    assert '"(0)" [label="(0): Z6/(0) (n=6)"];' in d6
    lines = [ln for ln in d6.splitlines() if "label=" in ln]
    assert lines[0].lstrip().startswith('"(0)"')
    chain2 = emit_dot(loads(Z2_TEXT + "diagram c\nnode top ring Z2\nbottom a\n"))
    assert chain2.count("label=") == 2 and chain2.count("->") == 1
    assert emit_dot(example2()).count("->") == 2


def test_workspace_registry(tmp_path):
    ws = Workspace()
    p = tmp_path / "z2.ring"
    p.write_text(Z2_TEXT)
    R = ws.parse("ring", p)
    assert ("ring", "Z2") in ws
    assert ws.sources["ring"]["Z2"] == str(p)
    # the same definition again is fine, a different one is not
    assert ws.parse("ring", p) is R
    q = tmp_path / "copy.ring"
    q.write_text(dumps(cyclic_ring(2)))
    assert ws.parse("ring", q) is R
    r = tmp_path / "clash.ring"
    r.write_text(dumps(cyclic_ring(3)).replace("ring Z3", "ring Z2"))
    with pytest.raises(DuplicateNameError):
        ws.parse("ring", r)


def test_workspace_diagram_uses_registered_rings(tmp_path):
    ws = Workspace()
    (tmp_path / "z2.ring").write_text(Z2_TEXT)
    ws.parse("ring", tmp_path / "z2.ring")
    (tmp_path / "d.diagram").write_text("diagram d\nnode top ring Z2\nbottom a\n")
    D = ws.parse("diagram", tmp_path / "d.diagram")
    assert ws.get("diagram", "d") is D


def test_empty_and_garbage():
    with pytest.raises(ParseError):
        parse_text("# nothing\n")
    with pytest.raises(ParseError, match="section header"):
        parse_text("bogus thing\n")
