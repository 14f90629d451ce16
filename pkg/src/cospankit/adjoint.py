"""Adjunctions between cospans and Beck–Chevalley cells.

A cospan is a left adjoint exactly when its wrong-way leg is a bijection.
:func:`construct_right_adjoint` builds the witness for such a cospan, and
:func:`search_adjoint` is a brute-force oracle that knows nothing about
that criterion: it enumerates candidate right adjoints and cells and keeps
whatever passes :func:`verify_adjunction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .cospan import (
    Cospan,
    TwoCell,
    _compose,
    associator,
    enumerate_cells,
    enumerate_cospans,
    hcompose,
    identity_cell,
    identity_cospan,
    invert_cell,
    is_invertible_cell,
    right_way,
    unitor_left,
    unitor_right,
    vcompose_chain,
    whisker_left,
    whisker_right,
    wrong_way,
)
from .errors import NotCommuting, NotLeftAdjoint, TypeMismatch
from .finset import (
    FinFn,
    compose_fn,
    identity,
    inverse,
    is_bijection,
    pushout,
    verify_pushout_universal,
)


@dataclass(frozen=True)
class AdjunctionWitness:
    left: Cospan
    right: Cospan
    unit: TwoCell
    counit: TwoCell


@dataclass
class AdjunctionReport:
    ok: bool
    left_zigzag: Optional[TwoCell] = None
    right_zigzag: Optional[TwoCell] = None
    diagnostics: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CommutingSquare:
    """``f: A → B``, ``g: A → C``, ``g2: B → P``, ``f2: C → P`` with ``g2∘f = f2∘g``."""

    f: FinFn
    g: FinFn
    g2: FinFn
    f2: FinFn

    def __post_init__(self):
        if self.f.dom != self.g.dom or self.g2.dom != self.f.cod or self.f2.dom != self.g.cod:
            raise TypeMismatch("square edges do not line up")
        if self.g2.cod != self.f2.cod:
            raise TypeMismatch("square has two different corners")
        if compose_fn(self.g2, self.f) != compose_fn(self.f2, self.g):
            raise NotCommuting("g2∘f != f2∘g")


def is_left_adjoint(c: Cospan) -> bool:
    return is_bijection(c.right)


def construct_right_adjoint(c: Cospan) -> AdjunctionWitness:
    """Witness ``c ⊣ wrong_way(f)`` where ``f = right⁻¹ ∘ left``.

    The unit is ``f`` regarded as a 2-cell and the counit is the fold map out
    of ``B ⊔_A B`` (for right-way ``c``).
    """
    if not is_left_adjoint(c):
        raise NotLeftAdjoint(f"right leg of {c!r} is not a bijection")
    r_inv = inverse(c.right)
    f = compose_fn(r_inv, c.left)
    right = wrong_way(f)

    unit_target = hcompose(right, c)
    if unit_target.left != unit_target.right:
        raise AssertionError("unit legs disagree; this is a bug")
    unit = TwoCell(identity_cospan(c.src), unit_target, unit_target.left)

    comp, po = _compose(c, right)
    fold = verify_pushout_universal(po, identity(c.tgt), r_inv)
    counit = TwoCell(comp, identity_cospan(c.tgt), fold)
    return AdjunctionWitness(c, right, unit, counit)


def zigzag_cells(w: AdjunctionWitness) -> tuple[TwoCell, TwoCell]:
    """The two pasted triangle composites ``left ⇒ left`` and ``right ⇒ right``."""
    L, R = w.left, w.right
    left_zz = vcompose_chain(
        invert_cell(unitor_right(L)),
        whisker_left(L, w.unit),
        invert_cell(associator(L, R, L)),
        whisker_right(w.counit, L),
        unitor_left(L),
    )
    right_zz = vcompose_chain(
        invert_cell(unitor_left(R)),
        whisker_right(w.unit, R),
        associator(R, L, R),
        whisker_left(R, w.counit),
        unitor_right(R),
    )
    return left_zz, right_zz


def verify_adjunction(w: AdjunctionWitness) -> AdjunctionReport:
    L, R = w.left, w.right
    if L.src != R.tgt or L.tgt != R.src:
        raise TypeMismatch("left and right cospans do not form an opposing pair")
    if w.unit.source != identity_cospan(L.src) or w.unit.target != hcompose(R, L):
        raise TypeMismatch("unit must be id_A ⇒ right∘left")
    if w.counit.source != hcompose(L, R) or w.counit.target != identity_cospan(L.tgt):
        raise TypeMismatch("counit must be left∘right ⇒ id_B")
    left_zz, right_zz = zigzag_cells(w)
    diagnostics = []
    if left_zz != identity_cell(L):
        diagnostics.append(f"left zigzag is {left_zz.map!r}, not the identity")
    if right_zz != identity_cell(R):
        diagnostics.append(f"right zigzag is {right_zz.map!r}, not the identity")
    return AdjunctionReport(not diagnostics, left_zz, right_zz, diagnostics)


def default_apex_bound(c: Cospan) -> int:
    return len(c.src) + len(c.tgt) + 2


def iter_adjoints(c: Cospan, apex_bound: Optional[int] = None) -> Iterator[AdjunctionWitness]:
    """Every adjunction witness for ``c`` whose right adjoint has apex size ``<= apex_bound``.

    Right adjoints are enumerated once per apex-isomorphism class; all unit
    and counit cells between them are tried.
    """
    if apex_bound is None:
        apex_bound = default_apex_bound(c)
    id_a, id_b = identity_cospan(c.src), identity_cospan(c.tgt)
    for right in enumerate_cospans(c.tgt, c.src, apex_bound):
        units = list(enumerate_cells(id_a, hcompose(right, c)))
        if not units:
            continue
        counits = list(enumerate_cells(hcompose(c, right), id_b))
        for unit in units:
            for counit in counits:
                w = AdjunctionWitness(c, right, unit, counit)
                if verify_adjunction(w):
                    yield w


def search_adjoint(c: Cospan, apex_bound: Optional[int] = None) -> Optional[AdjunctionWitness]:
    """First witness found by :func:`iter_adjoints`, or ``None``.

    ``None`` only means "no witness within the bound".
    """
    return next(iter_adjoints(c, apex_bound), None)


# -- Beck–Chevalley ---------------------------------------------------------

def beck_chevalley_cell(sq: CommutingSquare) -> TwoCell:
    """``g_! ∘ f^R ⇒ f2^R ∘ g2_!`` for the right-way images of the square."""
    lhs = hcompose(right_way(sq.g), wrong_way(sq.f))
    rhs = hcompose(wrong_way(sq.f2), right_way(sq.g2))
    po = pushout(sq.f, sq.g)
    # lhs is computed from exactly this pushout, so its legs are p1 and p2
    if lhs.apex != po.apex:
        raise AssertionError("composite apex differs from the pushout; this is a bug")
    u = verify_pushout_universal(po, rhs.left, rhs.right)
    return TwoCell(lhs, rhs, u)


def verify_cobase_change(sq: CommutingSquare) -> bool:
    return is_invertible_cell(beck_chevalley_cell(sq))


def pushout_square(f: FinFn, g: FinFn) -> CommutingSquare:
    po = pushout(f, g)
    return CommutingSquare(f, g, po.p1, po.p2)


__all__ = [
    "AdjunctionReport",
    "AdjunctionWitness",
    "CommutingSquare",
    "beck_chevalley_cell",
    "construct_right_adjoint",
    "default_apex_bound",
    "is_left_adjoint",
    "iter_adjoints",
    "pushout_square",
    "search_adjoint",
    "verify_adjunction",
    "verify_cobase_change",
    "zigzag_cells",
]
