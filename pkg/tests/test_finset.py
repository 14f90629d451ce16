import itertools

import pytest
from hypothesis import given

from cospankit.errors import DuplicateLabel, NotACocone, TypeMismatch
from cospankit.finset import (
    EMPTY,
    canonical_set,
    compose_fn,
    coproduct,
    enumerate_functions,
    enumerate_sets,
    fold,
    identity,
    is_bijection,
    make_fn,
    make_set,
    mediate,
    pushout,
    restricted_growth,
    tensor_many,
    verify_pushout_universal,
)

from conftest import functions_between, spans


def quotient_size(f, g):
    """Independent pushout size: connected components of the bipartite gluing graph."""
    nodes = [("B", b) for b in f.cod] + [("C", c) for c in g.cod]
    adj = {n: set() for n in nodes}
    for a in f.dom:
        u, v = ("B", f(a)), ("C", g(a))
        adj[u].add(v)
        adj[v].add(u)
    seen, comps = set(), 0
    for n in nodes:
        if n in seen:
            continue
        comps += 1
        stack = [n]
        while stack:
            m = stack.pop()
            if m not in seen:
                seen.add(m)
                stack.extend(adj[m])
    return comps


def test_make_set_examples():
    assert make_set(["a0", "a1"]).elements == ("a0", "a1")
    assert make_set([]) == EMPTY
    assert make_set(["b", "a"]).elements == ("a", "b")
    with pytest.raises(DuplicateLabel):
        make_set(["a", "a"])


def test_compose_examples():
    f = make_fn(make_set(["a"]), make_set(["b"]), {"a": "b"})
    g = make_fn(make_set(["b"]), make_set(["c"]), {"b": "c"})
    assert compose_fn(g, f).mapping == {"a": "c"}
    assert compose_fn(g, identity(g.dom)) == g
    assert compose_fn(identity(f.cod), f) == f
    with pytest.raises(TypeMismatch):
        compose_fn(f, f)


def test_coproduct_examples():
    A = make_set(["a"])
    cp = coproduct(A, A)
    assert cp.obj.elements == ("L.a", "R.a")
    assert len(coproduct(make_set(["a0", "a1"]), make_set(["b0"])).obj) == 3
    assert len(coproduct(EMPTY, A).obj) == 1
    i1, i2 = set(cp.inj1.images), set(cp.inj2.images)
    assert len(i1) == len(cp.inj1.images) and len(i2) == len(cp.inj2.images)
    assert not i1 & i2 and i1 | i2 == set(cp.obj)


def test_pushout_examples():
    A, B, C = make_set(["a0"]), make_set(["b0", "b1"]), make_set(["c0"])
    po = pushout(make_fn(A, B, {"a0": "b0"}), make_fn(A, C, {"a0": "c0"}))
    assert len(po.apex) == 2
    assert po.p1("b0") == po.p2("c0")
    # along an identity the pushout is the other object
    f = make_fn(A, B, {"a0": "b0"})
    po = pushout(identity(A), f)
    assert len(po.apex) == len(B) and is_bijection(po.p2)
    # B ⊔_A B for the counit of right_way(f)
    f = make_fn(make_set(["a"]), B, {"a": "b0"})
    assert len(pushout(f, f).apex) == 3


def test_pushout_representatives_are_first_occurrence():
    A, B, C = make_set(["a"]), make_set(["b0", "b1"]), make_set(["c0"])
    po = pushout(make_fn(A, B, {"a": "b1"}), make_fn(A, C, {"a": "c0"}))
    assert po.apex.elements == ("L.b0", "L.b1")
    assert po.p2("c0") == "L.b1"


@given(spans())
def test_pushout_matches_component_count(fg):
    f, g = fg
    po = pushout(f, g)
    assert len(po.apex) == quotient_size(f, g)
    assert compose_fn(po.p1, f) == compose_fn(po.p2, g)
    assert set(po.p1.image()) | set(po.p2.image()) == set(po.apex)


@given(spans(max_size=3))
def test_pushout_universal_property_exhaustive(fg):
    """Every commuting probe into a small set factors through exactly one map."""
    f, g = fg
    po = pushout(f, g)
    Q = canonical_set(2, "q")
    for h1 in enumerate_functions(f.cod, Q):
        for h2 in enumerate_functions(g.cod, Q):
            commutes = compose_fn(h1, f) == compose_fn(h2, g)
            mediators = [u for u in enumerate_functions(po.apex, Q)
                         if compose_fn(u, po.p1) == h1 and compose_fn(u, po.p2) == h2]
            if commutes:
                assert mediators == [verify_pushout_universal(po, h1, h2)]
            else:
                assert mediators == []
                with pytest.raises(NotACocone):
                    verify_pushout_universal(po, h1, h2)


def test_universal_examples():
    A, B = make_set(["a"]), make_set(["b0", "b1"])
    f = make_fn(A, B, {"a": "b0"})
    po = pushout(f, f)
    assert verify_pushout_universal(po, po.p1, po.p2) == identity(po.apex)
    one = make_set(["*"])
    u = verify_pushout_universal(po, make_fn(B, one, {"b0": "*", "b1": "*"}),
                                 make_fn(B, one, {"b0": "*", "b1": "*"}))
    assert set(u.mapping.values()) == {"*"}


@given(spans())
def test_pushout_is_symmetric(fg):
    f, g = fg
    p, q = pushout(f, g), pushout(g, f)
    u = verify_pushout_universal(p, q.p2, q.p1)
    assert is_bijection(u)


def test_enumeration_examples():
    A = make_set(["a0", "a1"])
    assert is_bijection(identity(A))
    assert not is_bijection(fold(A))
    fs = list(enumerate_functions(A, canonical_set(3, "b")))
    assert len(fs) == 9
    assert [tuple(f.images) for f in fs] == sorted(tuple(f.images) for f in fs)
    assert [len(s) for s in enumerate_sets(3)] == [0, 1, 2, 3]


def test_restricted_growth_counts_set_partitions():
    bell = [1, 1, 2, 5, 15, 52]
    for n, b in enumerate(bell):
        assert sum(1 for _ in restricted_growth(n, n)) == b


@given(functions_between(), functions_between(dprefix="b", cprefix="c"))
def test_compose_associative_and_unital(f, g):
    if f.cod != g.dom:
        g = make_fn(f.cod, f.cod, {x: x for x in f.cod})
    h = identity(g.cod)
    assert compose_fn(h, compose_fn(g, f)) == compose_fn(compose_fn(h, g), f)
    assert compose_fn(identity(f.cod), f) == f == compose_fn(f, identity(f.dom))


def test_tensor_many_nests_left():
    A, B, C = (canonical_set(1, p) for p in "abc")
    obj, injs = tensor_many([A, B, C])
    assert obj == coproduct(coproduct(A, B).obj, C).obj
    assert [i("a0" if k == 0 else "b0" if k == 1 else "c0") for k, i in enumerate(injs)] == \
        ["L.L.a0", "L.R.b0", "R.c0"]
    assert tensor_many([]) == (EMPTY, [])


def test_mediate_rejects_bad_probes():
    A, B = make_set(["a"]), make_set(["b0", "b1"])
    f = make_fn(A, B, {"a": "b0"})
    po = pushout(f, f)
    one = make_set(["*", "**"])
    with pytest.raises(NotACocone):
        mediate([po.p1, po.p2], [make_fn(B, one, {"b0": "*", "b1": "*"}),
                                 make_fn(B, one, {"b0": "**", "b1": "*"})])


def test_all_functions_count():
    for m, n in itertools.product(range(4), repeat=2):
        assert len(list(enumerate_functions(canonical_set(m), canonical_set(n, "y")))) == n ** m
