import itertools

import pytest
from hypothesis import given

from cospankit.adjoint import (
    AdjunctionWitness,
    CommutingSquare,
    beck_chevalley_cell,
    construct_right_adjoint,
    default_apex_bound,
    is_left_adjoint,
    iter_adjoints,
    pushout_square,
    search_adjoint,
    verify_adjunction,
    verify_cobase_change,
)
from cospankit.bar import padded_square
from cospankit.cospan import (
    Cospan,
    enumerate_cells,
    enumerate_cospans,
    hcompose,
    identity_cospan,
    is_invertible_cell,
    is_two_isomorphic,
    mirror,
    right_way,
    wrong_way,
)
from cospankit.errors import NotCommuting, NotLeftAdjoint, TypeMismatch
from cospankit.finset import (
    EMPTY,
    canonical_set,
    compose_fn,
    enumerate_functions,
    fold,
    identity,
    initial_map,
    make_fn,
    make_set,
)
from cospankit.frobenius import rigidity_square

from conftest import cospans, functions_between

A1 = make_set(["a"])
B2 = make_set(["b0", "b1"])
F = make_fn(A1, B2, {"a": "b0"})


def test_is_left_adjoint_examples():
    assert is_left_adjoint(right_way(F))
    assert not is_left_adjoint(wrong_way(F))
    assert is_left_adjoint(identity_cospan(B2))
    assert is_left_adjoint(identity_cospan(EMPTY))


def test_construct_right_adjoint_for_right_way_map():
    w = construct_right_adjoint(right_way(F))
    assert w.right == wrong_way(F)
    assert [x.split(".", 1)[1] for x in w.unit.map.images] == list(F.images)
    assert len(w.counit.source.apex) == 3
    assert w.counit.map.cod == B2 and set(w.counit.map.images) == set(B2)
    assert verify_adjunction(w)


def test_identity_is_self_adjoint():
    w = construct_right_adjoint(identity_cospan(A1))
    assert w.right == identity_cospan(A1)
    assert is_invertible_cell(w.unit) and is_invertible_cell(w.counit)
    assert verify_adjunction(w)
    assert verify_adjunction(construct_right_adjoint(identity_cospan(EMPTY)))


def test_unit_right_adjoint_is_counit_cospan():
    A = make_set(["a0", "a1"])
    w = construct_right_adjoint(right_way(initial_map(A)))
    assert w.right == mirror(right_way(initial_map(A)))
    assert (w.right.src, w.right.tgt, w.right.apex) == (A, EMPTY, A)


def test_construct_rejects_non_left_adjoints():
    with pytest.raises(NotLeftAdjoint):
        construct_right_adjoint(wrong_way(F))


def test_units_are_forced_by_legs():
    A = make_set(["a0", "a1"])
    swap = make_fn(A, A, {"a0": "a1", "a1": "a0"})
    w = construct_right_adjoint(right_way(swap))
    assert list(enumerate_cells(w.unit.source, w.unit.target)) == [w.unit]


def test_perturbed_witness_fails_with_diagnostic():
    """Pad the right adjoint with a stray point; the counit has to send it somewhere."""
    A = make_set(["a0", "a1"])
    X = make_set(["a0", "a1", "x"])
    L = identity_cospan(A)
    R = Cospan(A, A, X, make_fn(A, X, {"a0": "a0", "a1": "a1"}), make_fn(A, X, {"a0": "a0", "a1": "a1"}))
    units = list(enumerate_cells(identity_cospan(A), hcompose(R, L)))
    counits = list(enumerate_cells(hcompose(L, R), identity_cospan(A)))
    assert len(units) == 1 and len(counits) == 2
    for counit in counits:
        report = verify_adjunction(AdjunctionWitness(L, R, units[0], counit))
        assert not report
        assert any("right zigzag" in d for d in report.diagnostics)


def test_verify_adjunction_boundary_errors():
    w = construct_right_adjoint(right_way(F))
    with pytest.raises(TypeMismatch):
        verify_adjunction(AdjunctionWitness(w.left, w.left, w.unit, w.counit))


@given(functions_between(max_size=3))
def test_right_way_witness_is_mirror(f):
    w = construct_right_adjoint(right_way(f))
    assert w.right == mirror(right_way(f))
    assert verify_adjunction(w)


@given(cospans(max_size=3))
def test_synthesis_for_general_left_adjoints(c):
    if is_left_adjoint(c):
        w = construct_right_adjoint(c)
        assert verify_adjunction(w)
        assert w.unit.map == compose_fn(w.unit.target.left, identity(c.src))


def test_search_examples():
    w = search_adjoint(right_way(F))
    assert w is not None and is_two_isomorphic(w.right, wrong_way(F))
    assert search_adjoint(wrong_way(fold(make_set(["a"]))), 5) is None
    w = search_adjoint(identity_cospan(A1))
    assert w is not None and len(w.right.apex) == 1
    assert default_apex_bound(right_way(F)) == 5


@pytest.mark.parametrize("a,b", [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)])
def test_decision_agrees_with_search(a, b):
    A, B = canonical_set(a, "a"), canonical_set(b, "b")
    for c in enumerate_cospans(A, B, 3):
        assert is_left_adjoint(c) == (search_adjoint(c, 6) is not None), c


@pytest.mark.parametrize("a,b", [(1, 2), (2, 2), (2, 1)])
def test_adjoints_are_unique_up_to_two_iso(a, b):
    A, B = canonical_set(a, "a"), canonical_set(b, "b")
    for c in enumerate_cospans(A, B, 2):
        rights = [w.right for w in iter_adjoints(c, 4)]
        for r1, r2 in itertools.combinations(rights, 2):
            assert is_two_isomorphic(r1, r2)


# -- Beck–Chevalley -----------------------------------------------------------

def test_bc_on_doubled_point_square():
    sq = pushout_square(F, F)
    assert len(sq.g2.cod) == 3
    assert verify_cobase_change(sq)


def test_bc_identity_square():
    sq = CommutingSquare(identity(B2), identity(B2), identity(B2), identity(B2))
    cell = beck_chevalley_cell(sq)
    assert cell.map == identity(cell.map.dom)
    assert verify_cobase_change(sq)


def test_bc_padded_square_is_not_invertible():
    sq = padded_square(F, F)
    cell = beck_chevalley_cell(sq)
    assert len(set(cell.map.images)) < len(cell.map.cod)
    assert not verify_cobase_change(sq)


def test_bc_not_commuting():
    g = make_fn(A1, B2, {"a": "b1"})
    with pytest.raises(NotCommuting):
        CommutingSquare(F, g, identity(B2), identity(B2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rigidity_square_satisfies_cobase_change(n):
    assert verify_cobase_change(rigidity_square(canonical_set(n, "a")))


def _is_pushout(sq):
    """Independent oracle: (P, g2, f2) is a pushout iff every cocone factors uniquely."""
    P = sq.g2.cod
    for Q in (canonical_set(len(P) + 1, "q"), canonical_set(2, "q")):
        for h1 in enumerate_functions(sq.f.cod, Q):
            for h2 in enumerate_functions(sq.g.cod, Q):
                if compose_fn(h1, sq.f) != compose_fn(h2, sq.g):
                    continue
                n = sum(1 for u in enumerate_functions(P, Q)
                        if compose_fn(u, sq.g2) == h1 and compose_fn(u, sq.f2) == h2)
                if n != 1:
                    return False
    return True


def _squares(max_size):
    for A in [canonical_set(n, "a") for n in range(max_size + 1)]:
        for B in [canonical_set(n, "b") for n in range(1, max_size + 1)]:
            for C in [canonical_set(n, "c") for n in range(1, max_size + 1)]:
                for f in enumerate_functions(A, B):
                    for g in enumerate_functions(A, C):
                        for P in [canonical_set(n, "p") for n in range(1, 4)]:
                            for g2 in enumerate_functions(B, P):
                                for f2 in enumerate_functions(C, P):
                                    if compose_fn(g2, f) == compose_fn(f2, g):
                                        yield CommutingSquare(f, g, g2, f2)


def test_bc_invertible_iff_pushout():
    seen = [0, 0]
    for sq in _squares(2):
        ok = _is_pushout(sq)
        assert verify_cobase_change(sq) == ok
        seen[ok] += 1
    assert all(seen)
