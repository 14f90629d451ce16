import itertools

import pytest

from cospankit.bar import (
    bar_truncation,
    cocone_fn,
    degeneracy_fn,
    face_fn,
    forgetful_cobase_change_check,
    padded_square,
    pushout_algebra,
    unit_is_identity_instance,
    verify_bar_cocone,
)
from cospankit.adjoint import verify_cobase_change
from cospankit.cospan import find_two_iso, is_two_isomorphic
from cospankit.finset import (
    EMPTY,
    canonical_set,
    compose_fn,
    coproduct,
    enumerate_functions,
    identity,
    initial_map,
    is_injective,
    make_fn,
    make_set,
)
from cospankit.frobenius import canonical_algebra, rigidity_square

A1 = make_set(["a"])


def spans(max_size):
    for n in range(max_size + 1):
        A = canonical_set(n, "a")
        for nb in range(max_size + 1):
            for nc in range(max_size + 1):
                for f in enumerate_functions(A, canonical_set(nb, "b")):
                    for g in enumerate_functions(A, canonical_set(nc, "c")):
                        yield f, g


def test_level_counts_at_n1():
    t = bar_truncation(identity(A1), identity(A1), 1)
    assert [len(L) for L in t.levels] == [2, 3]
    assert len(t.faces) == 2 and len(t.degeneracies) == 1


def test_identity_count_at_n3():
    t = bar_truncation(identity(A1), identity(A1), 3)
    assert len(t.witnesses) == 33


def test_face_and_degeneracy_functions_compose_simplicially():
    """Independent route: the identities already hold for the underlying functions."""
    B, C = make_set(["b0", "b1"]), make_set(["c0"])
    A = make_set(["a0", "a1"])
    f = make_fn(A, B, {"a0": "b0", "a1": "b1"})
    g = make_fn(A, C, {"a0": "c0", "a1": "c0"})
    d = lambda k, i: face_fn(f, g, k, i)
    s = lambda k, j: degeneracy_fn(f, g, k, j)
    for k in range(2, 4):
        for i, j in itertools.combinations(range(k + 1), 2):
            assert compose_fn(d(k - 1, i), d(k, j)) == compose_fn(d(k - 1, j - 1), d(k, i))
    for k in range(3):
        for j in range(k + 1):
            assert compose_fn(d(k + 1, j), s(k, j)) == identity(s(k, j).dom)
            assert compose_fn(d(k + 1, j + 1), s(k, j)) == identity(s(k, j).dom)
            assert is_injective(s(k, j))


def test_empty_base():
    B, C = make_set(["b0"]), make_set(["c0", "c1"])
    t = bar_truncation(initial_map(B), initial_map(C), 3)
    assert all(len(L) == 3 for L in t.levels)
    assert t.witnesses


def test_simplicial_identities_small_spans():
    count = 0
    for f, g in spans(2):
        t = bar_truncation(f, g, 3)
        assert len(t.witnesses) == 33
        count += 1
    assert count == 43


def test_pushout_algebra_along_identity():
    B = make_set(["b0", "b1"])
    f = make_fn(A1, B, {"a": "b1"})
    p = pushout_algebra(f, identity(A1))
    assert len(p.carrier) == len(B)
    assert is_two_isomorphic(p.algebra.mult, canonical_algebra(p.carrier).mult)
    assert p.ok


def test_pushout_algebra_over_empty_is_coproduct():
    B, C = make_set(["b0"]), make_set(["c0", "c1"])
    p = pushout_algebra(initial_map(B), initial_map(C))
    assert len(p.carrier) == len(coproduct(B, C).obj) == 3
    assert p.ok


def test_pushout_algebra_example():
    B, C = make_set(["b0", "b1"]), make_set(["c0"])
    p = pushout_algebra(make_fn(A1, B, {"a": "b0"}), make_fn(A1, C, {"a": "c0"}))
    assert len(p.carrier) == 2 and p.rigidity.ok and p.ok
    assert set(p.algebra_map_witnesses) == {"b.unit", "b.mult", "c.unit", "c.mult"}


def test_cocone_examples():
    for f, g in [(identity(A1), identity(A1)), (initial_map(A1), initial_map(make_set(["c"])))]:
        t = bar_truncation(f, g, 2)
        r = verify_bar_cocone(t, pushout_algebra(f, g))
        assert r and r.checked == len(t.faces) + len(t.degeneracies)


def test_cocone_over_small_spans():
    for f, g in spans(2):
        t = bar_truncation(f, g, 2)
        p = pushout_algebra(f, g)
        assert p.ok
        assert verify_bar_cocone(t, p)
        assert cocone_fn(t, p, 0).cod == p.carrier


def test_cocone_rejects_mismatch():
    f = identity(A1)
    g = make_fn(A1, make_set(["c"]), {"a": "c"})
    with pytest.raises(ValueError):
        verify_bar_cocone(bar_truncation(f, f, 1), pushout_algebra(f, g))


def test_forgetful_check():
    for f, g in spans(2):
        assert forgetful_cobase_change_check(f, g)
        assert not verify_cobase_change(padded_square(f, g))
    assert forgetful_cobase_change_check(identity(A1), identity(A1))
    for n in (1, 2):
        sq = rigidity_square(canonical_set(n, "a"))
        assert forgetful_cobase_change_check(sq.f, sq.g)


def test_unit_is_identity_instances():
    for n in range(3):
        assert unit_is_identity_instance(canonical_set(n, "a"), 3) is None

def test_canonical_algebras_on_distinct_sets_are_not_identified():
    """Same-size carriers give 2-isomorphic data after relabeling; different sizes never do."""
    a = canonical_algebra(canonical_set(2, "a"))
    b = canonical_algebra(canonical_set(2, "b"))
    assert len(a.mult.apex) == len(b.mult.apex)
    for n, m in itertools.combinations(range(3), 2):
        x, y = canonical_algebra(canonical_set(n, "a")), canonical_algebra(canonical_set(m, "a"))
        assert len(x.mult.apex) != len(y.mult.apex)
    assert find_two_iso(a.unit, a.unit) is not None
    assert canonical_algebra(EMPTY).carrier == canonical_set(0, "a")
