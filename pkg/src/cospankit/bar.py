"""Bar complexes of canonical algebras, pushout algebras and cobase change.

For algebra maps ``f: A → B`` and ``g: A → C`` the bar complex has level
``k`` equal to ``B ⊔ A^k ⊔ C``.  Face ``d_i`` merges factors ``i`` and
``i+1`` (through ``f`` into ``B``, through ``g`` into ``C``, or by the fold
in between); degeneracy ``s_j`` inserts a unit ``A`` after factor ``j``.
Every face and degeneracy is the right-way image of a function.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .adjoint import CommutingSquare, pushout_square, verify_cobase_change
from .cospan import (
    Cospan,
    TwoCell,
    compose_chain,
    find_two_iso,
    hcompose,
    identity_cospan,
    right_way,
    tensor,
)
from .errors import SimplicialIdentityFailure
from .finset import FinFn, FinSet, compose_fn, make_fn, make_set, pushout, tensor_many
from .frobenius import AlgebraDatum, RigidityReport, canonical_algebra, verify_rigid


def _level_map(src: list, src_inj, dst_inj, dst_of) -> dict:
    """Mapping for a function between levels, factor by factor.

    ``dst_of(i)`` gives ``(j, fn)``: factor ``i`` goes to factor ``j`` along ``fn``.
    """
    mapping = {}
    for i, S in enumerate(src):
        j, fn = dst_of(i)
        for e in S:
            mapping[src_inj[i](e)] = dst_inj[j](fn(e))
    return mapping


@dataclass
class BarComplexTruncation:
    f: FinFn
    g: FinFn
    n: int
    levels: list[FinSet]
    faces: dict[tuple[int, int], Cospan]         # (k, i): level k ↛ level k-1
    degeneracies: dict[tuple[int, int], Cospan]  # (k, j): level k ↛ level k+1
    witnesses: dict[str, TwoCell] = field(default_factory=dict)

    @property
    def A(self) -> FinSet:
        return self.f.dom

    def d(self, k: int, i: int) -> Cospan:
        return self.faces[k, i]

    def s(self, k: int, j: int) -> Cospan:
        return self.degeneracies[k, j]


def _factors(f: FinFn, g: FinFn, k: int) -> list[FinSet]:
    return [f.cod] + [f.dom] * k + [g.cod]


def face_fn(f: FinFn, g: FinFn, k: int, i: int) -> FinFn:
    src_f, dst_f = _factors(f, g, k), _factors(f, g, k - 1)
    src, src_inj = tensor_many(src_f)
    dst, dst_inj = tensor_many(dst_f)
    ident = lambda e: e

    def dst_of(p):
        if p < i:
            return p, ident
        if p == i:
            return i, (g if i == k else ident)
        if p == i + 1:
            return i, (f if i == 0 else ident)
        return p - 1, ident

    return make_fn(src, dst, _level_map(src_f, src_inj, dst_inj, dst_of))


def degeneracy_fn(f: FinFn, g: FinFn, k: int, j: int) -> FinFn:
    """Level ``k`` into level ``k+1`` skipping the new factor ``j+1``."""
    src_f, dst_f = _factors(f, g, k), _factors(f, g, k + 1)
    src, src_inj = tensor_many(src_f)
    dst, dst_inj = tensor_many(dst_f)
    ident = lambda e: e
    return make_fn(src, dst, _level_map(src_f, src_inj, dst_inj,
                                        lambda p: (p if p <= j else p + 1, ident)))


def _identities(n: int):
    """Each simplicial identity as ``(name, lhs, rhs)`` with chains listed first-applied first.

    A chain item is ``("d"|"s", level, index)``; ``None`` on the right means identity.
    """
    out = []
    for k in range(2, n + 1):
        for j in range(k + 1):
            for i in range(j):
                out.append((f"d{i}d{j}@{k}", [("d", k, j), ("d", k - 1, i)],
                            [("d", k, i), ("d", k - 1, j - 1)]))
    for k in range(n):
        for j in range(k + 1):
            for i in range(k + 2):
                lhs = [("s", k, j), ("d", k + 1, i)]
                if i < j:
                    rhs = [("d", k, i), ("s", k - 1, j - 1)]
                elif i in (j, j + 1):
                    rhs = None
                else:
                    rhs = [("d", k, i - 1), ("s", k - 1, j)]
                out.append((f"d{i}s{j}@{k}", lhs, rhs))
    for k in range(0, n - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                out.append((f"s{i}s{j}@{k}", [("s", k, j), ("s", k + 1, i)],
                            [("s", k, i), ("s", k + 1, j + 1)]))
    return out


def bar_truncation(f: FinFn, g: FinFn, n: int = 3) -> BarComplexTruncation:
    """Levels ``0..n`` with faces and degeneracies; simplicial identities are checked.

    Raises :class:`SimplicialIdentityFailure` if an identity has no 2-iso witness.
    """
    if f.dom != g.dom:
        raise ValueError("f and g need a common domain")
    levels = [tensor_many(_factors(f, g, k))[0] for k in range(n + 1)]
    faces = {(k, i): right_way(face_fn(f, g, k, i)) for k in range(1, n + 1) for i in range(k + 1)}
    degs = {(k, j): right_way(degeneracy_fn(f, g, k, j)) for k in range(n) for j in range(k + 1)}
    t = BarComplexTruncation(f, g, n, levels, faces, degs)
    for name, lhs, rhs in _identities(n):
        a = _chain(t, lhs)
        b = identity_cospan(a.src) if rhs is None else _chain(t, rhs)
        w = find_two_iso(a, b)
        if w is None:
            raise SimplicialIdentityFailure(name)
        t.witnesses[name] = w
    return t


def _chain(t: BarComplexTruncation, items) -> Cospan:
    return compose_chain(*[t.d(k, i) if kind == "d" else t.s(k, i) for kind, k, i in items])


# -- pushout algebras -------------------------------------------------------

@dataclass
class PushoutAlgebra:
    f: FinFn
    g: FinFn
    carrier: FinSet
    algebra: AlgebraDatum
    cocone_b: Cospan
    cocone_c: Cospan
    square: TwoCell
    algebra_map_witnesses: dict[str, TwoCell]
    rigidity: RigidityReport

    @property
    def ok(self) -> bool:
        return bool(self.rigidity) and len(self.algebra_map_witnesses) == 4


def _algebra_map_witnesses(h: FinFn, name: str) -> dict[str, TwoCell]:
    """Cells showing ``right_way(h)`` preserves unit and multiplication."""
    src, tgt = canonical_algebra(h.dom), canonical_algebra(h.cod)
    hc = right_way(h)
    out = {}
    unit = find_two_iso(hcompose(hc, src.unit), tgt.unit)
    if unit is not None:
        out[f"{name}.unit"] = unit
    mult = find_two_iso(hcompose(hc, src.mult), hcompose(tgt.mult, tensor(hc, hc)))
    if mult is not None:
        out[f"{name}.mult"] = mult
    return out


def pushout_algebra(f: FinFn, g: FinFn) -> PushoutAlgebra:
    """Canonical algebra on ``B ⊔_A C`` with its cocone, checked to be rigid."""
    po = pushout(f, g)
    alg = canonical_algebra(po.apex)
    cb, cc = right_way(po.p1), right_way(po.p2)
    square = find_two_iso(hcompose(cb, right_way(f)), hcompose(cc, right_way(g)))
    if square is None:
        raise AssertionError("pushout cocone square does not commute; this is a bug")
    wits = _algebra_map_witnesses(po.p1, "b")
    wits.update(_algebra_map_witnesses(po.p2, "c"))
    return PushoutAlgebra(f, g, po.apex, alg, cb, cc, square, wits, verify_rigid(alg))


def cocone_fn(t: BarComplexTruncation, p: PushoutAlgebra, k: int) -> FinFn:
    po = pushout(t.f, t.g)
    fac = _factors(t.f, t.g, k)
    src, inj = tensor_many(fac)
    legs = [po.p1] + [compose_fn(po.p1, t.f)] * k + [po.p2]
    return make_fn(src, p.carrier, {inj[i](e): legs[i](e) for i, S in enumerate(fac) for e in S})


@dataclass
class CoconeReport:
    ok: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_bar_cocone(t: BarComplexTruncation, p: PushoutAlgebra) -> CoconeReport:
    """Cocone legs commute with every face and degeneracy up to 2-iso."""
    if (t.f, t.g) != (p.f, p.g):
        raise ValueError("bar complex and pushout algebra come from different spans")
    legs = [right_way(cocone_fn(t, p, k)) for k in range(t.n + 1)]
    failures = []
    checked = 0
    for (k, i), d in t.faces.items():
        checked += 1
        if find_two_iso(hcompose(legs[k - 1], d), legs[k]) is None:
            failures.append(f"d{i}@{k}")
    for (k, j), s in t.degeneracies.items():
        checked += 1
        if find_two_iso(hcompose(legs[k + 1], s), legs[k]) is None:
            failures.append(f"s{j}@{k}")
    return CoconeReport(not failures, checked, failures)


# -- cobase change of the forgetful functor ---------------------------------

def forgetful_cobase_change_check(f: FinFn, g: FinFn) -> bool:
    """Beck–Chevalley for the right-way image of the pushout square of carriers."""
    return verify_cobase_change(pushout_square(f, g))


def padded_square(f: FinFn, g: FinFn, extra: str = "pad") -> CommutingSquare:
    """The pushout square with one unreachable point added to the corner."""
    po = pushout(f, g)
    label = extra
    while label in po.apex:
        label += "'"
    P = make_set(list(po.apex) + [label])
    widen = lambda h: make_fn(h.dom, P, h.mapping)
    return CommutingSquare(f, g, widen(po.p1), widen(po.p2))


def unit_is_identity_instance(A: FinSet, apex_bound: int = 3) -> Optional[str]:
    """``None`` if every unital multiplication on ``A`` is the canonical one up to 2-iso."""
    from .frobenius import classify_unital_multiplications
    sols = classify_unital_multiplications(A, apex_bound)
    if not sols:
        return "no unital multiplication found"
    canon = canonical_algebra(A).mult
    for s in sols:
        if find_two_iso(s.mult, canon) is None:
            return f"{s.mult!r} is not canonical"
    return None
