import json

import pytest
from hypothesis import given

from cospankit.adjoint import construct_right_adjoint, pushout_square
from cospankit.bar import bar_truncation
from cospankit.cospan import enumerate_cells, identity_cell, right_way
from cospankit.envbm import canonical_object, envbm_generators, envbm_hom
from cospankit.errors import ParseError, UnknownName
from cospankit.finset import canonical_set, fold, identity, make_fn, make_set
from cospankit.frobenius import canonical_algebra, self_duality, verify_frobenius
from cospankit.serialize import (
    Report,
    deserialize,
    dumps,
    loads,
    parse_workspace,
    round_trip,
    serialize,
)

from conftest import cospans, finsets, functions

A = make_set(["a0", "a1"])


@given(cospans(max_size=5))
def test_cospan_round_trip(c):
    assert round_trip(c) == c


@given(finsets(max_size=5))
def test_set_round_trip(s):
    assert round_trip(s) == s


@given(functions(canonical_set(3, "x"), canonical_set(2, "y")))
def test_fn_round_trip(f):
    assert round_trip(f) == f


@pytest.mark.parametrize("value", [
    identity_cell(right_way(fold(A))),
    construct_right_adjoint(right_way(fold(A))),
    pushout_square(fold(A), fold(A)),
    canonical_algebra(A),
    verify_frobenius(canonical_algebra(A)),
    self_duality(A),
    canonical_object(1, 1, 2),
    envbm_generators()[0],
    bar_truncation(identity(make_set(["a"])), identity(make_set(["a"])), 2),
    Report("x", {"k": 1}, "pass", {"w": [1]}, ["d"]),
], ids=lambda v: type(v).__name__)
def test_every_type_round_trips(value):
    assert round_trip(value) == value


def test_envbm_hom_round_trips():
    for m in envbm_hom(canonical_object(2, 1, 0), canonical_object(1, 1, 0)):
        assert round_trip(m) == m


def test_dumps_is_canonical():
    a = dumps({"b": 1, "a": [2]})
    assert a == '{\n  "a": [\n    2\n  ],\n  "b": 1\n}\n'


def test_shorthand_forms():
    c = loads(json.dumps({"cospan": {"src": ["a"], "tgt": ["b"], "apex": ["x"],
                                     "left": {"a": "x"}, "right": {"b": "x"}}}))
    assert len(c.apex) == 1
    assert deserialize(["p", "q"]) == make_set(["p", "q"])


def test_malformed_fiber_order_names_key():
    bad = {"envbm_mor": {"dom": {"envbm_obj": {"L": ["l0", "l1"]}},
                         "cod": {"envbm_obj": {"L": ["k"]}},
                         "map": {"l0": "k", "l1": "k"},
                         "orders": {"k": ["l0"]}}}
    with pytest.raises(ParseError, match=r"orders\.k"):
        deserialize(bad)


@pytest.mark.parametrize("bad,where", [
    ({"cospan": {"src": ["a"], "tgt": [], "apex": [], "left": {}, "right": {}}}, "left"),
    ({"fn": {"dom": ["a"], "cod": ["b"], "map": {"a": "zz"}}}, "map"),
    ({"widget": {}}, "unknown kind"),
    ({"set": {"elements": ["a", "a"]}}, "elements"),
    ({"report": {"command": "c", "inputs": {}, "verdict": "maybe"}}, "verdict"),
])
def test_parse_errors_carry_paths(bad, where):
    with pytest.raises(ParseError, match=where):
        deserialize(bad)


def test_invalid_json():
    with pytest.raises(ParseError, match="line 1"):
        loads("{")


def test_names_need_a_workspace():
    with pytest.raises(UnknownName):
        deserialize("A")


def test_empty_workspace():
    ws = parse_workspace([])
    assert ws.names() == []


def test_workspace_references(tmp_path):
    one = tmp_path / "one.json"
    two = tmp_path / "two.json"
    one.write_text(json.dumps({"A": ["a0", "a1"], "f": {"fn": {"dom": "A", "cod": "A", "map": {"a0": "a1", "a1": "a0"}}}}))
    two.write_text(json.dumps({"c": {"cospan": {"src": "A", "tgt": "A", "apex": "A", "left": "f", "right": {"a0": "a0", "a1": "a1"}}}}))
    ws = parse_workspace([one, two])
    assert ws.names() == ["A", "c", "f"]
    assert ws["c"].left == make_fn(A, A, {"a0": "a1", "a1": "a0"})
    assert ws["c"].left is ws["f"]


def test_workspace_errors(tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"x": "y", "y": "x"}))
    with pytest.raises(ParseError, match="itself"):
        parse_workspace([p])
    q = tmp_path / "q.json"
    q.write_text(json.dumps({"z": "missing"}))
    with pytest.raises(UnknownName, match="missing"):
        parse_workspace([q])
    r = tmp_path / "r.json"
    r.write_text(json.dumps({"z": ["a"]}))
    with pytest.raises(ParseError, match="already bound"):
        parse_workspace([r, r])
    s = tmp_path / "s.json"
    s.write_text("[1]")
    with pytest.raises(ParseError, match="top level"):
        parse_workspace([s])


def test_serialize_rejects_unknown_types():
    with pytest.raises(TypeError):
        serialize(object())


def test_cells_serialize_with_boundaries():
    c = right_way(fold(A))
    cell = next(iter(enumerate_cells(c, c)))
    body = serialize(cell)["cell"]
    assert set(body) == {"from", "to", "map"}
