"""Algebras on cospan objects: Frobenius structure, duality, rigidity.

Every finite set ``A`` carries a canonical commutative algebra in cospans
(unit ``∅ → A``, multiplication the fold ``A ⊔ A → A``, both right-way).
This module checks that it is Frobenius and rigid, builds the self-duality
and transposes, and classifies unital multiplications at bounded apex size.

All axioms are checked up to invertible 2-cells with no higher coherence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .adjoint import (
    AdjunctionWitness,
    CommutingSquare,
    construct_right_adjoint,
    is_left_adjoint,
    verify_adjunction,
)
from .cospan import (
    Cospan,
    TwoCell,
    cell_is_unique,
    compose_chain,
    enumerate_cospans,
    find_two_iso,
    hcompose,
    identity_cell,
    identity_cospan,
    invert_cell,
    is_invertible_cell,
    is_two_isomorphic,
    mirror,
    right_way,
    tensor,
    tensor_cells,
    unitor_left,
    unitor_right,
    vcompose_chain,
    whisker_left,
    whisker_right,
)
from .errors import (
    ClassificationCounterexample,
    CounitalityFailed,
    NotLeftAdjoint,
    NotRigidCandidate,
)
from .finset import (
    EMPTY,
    FinSet,
    associator_fn,
    compose_fn,
    coproduct,
    coproduct_fn,
    fold,
    identity,
    initial_map,
    inverse,
    make_fn,
    swap_fn,
    unitor_left_fn,
    unitor_right_fn,
)


def _tensor3(a: Cospan, b: Cospan, c: Cospan) -> Cospan:
    return tensor(tensor(a, b), c)


@dataclass(frozen=True)
class AlgebraDatum:
    """Carrier with unit ``∅ ↛ A``, multiplication ``A⊔A ↛ A`` and axiom witnesses.

    ``witnesses`` maps ``left_unit``, ``right_unit``, ``assoc`` and ``comm``
    to invertible 2-cells; it may be empty for hand-built test fixtures.
    """

    carrier: FinSet
    unit: Cospan
    mult: Cospan
    witnesses: tuple[tuple[str, TwoCell], ...] = ()

    def witness(self, name: str) -> Optional[TwoCell]:
        return dict(self.witnesses).get(name)


def axiom_composites(A: FinSet, unit: Cospan, mult: Cospan) -> dict[str, tuple[Cospan, Cospan]]:
    """For each algebra axiom, the pair of 1-cells that must be 2-isomorphic."""
    idA = identity_cospan(A)
    AA = coproduct(A, A).obj
    return {
        "left_unit": (hcompose(mult, tensor(unit, idA)), right_way(unitor_left_fn(A))),
        "right_unit": (hcompose(mult, tensor(idA, unit)), right_way(unitor_right_fn(A))),
        "assoc": (
            hcompose(mult, tensor(mult, idA)),
            compose_chain(right_way(associator_fn(A, A, A)), tensor(idA, mult), mult),
        ),
        "comm": (hcompose(mult, right_way(swap_fn(A, A))), mult),
    } if len(AA) == 2 * len(A) else {}


def algebra_witnesses(A: FinSet, unit: Cospan, mult: Cospan,
                      axioms=("left_unit", "right_unit", "assoc", "comm")) -> dict[str, Optional[TwoCell]]:
    pairs = axiom_composites(A, unit, mult)
    return {name: find_two_iso(*pairs[name]) for name in axioms}


def canonical_algebra(A: FinSet) -> AlgebraDatum:
    unit = right_way(initial_map(A))
    mult = right_way(fold(A))
    wits = algebra_witnesses(A, unit, mult)
    missing = [k for k, v in wits.items() if v is None]
    if missing:
        raise AssertionError(f"canonical algebra lacks witnesses {missing}; this is a bug")
    return AlgebraDatum(A, unit, mult, tuple(sorted(wits.items())))


def counit_of(d: AlgebraDatum) -> Cospan:
    if not is_left_adjoint(d.unit):
        raise NotRigidCandidate("unit is not a left adjoint")
    return mirror(d.unit)


def comult_of(d: AlgebraDatum) -> Cospan:
    if not is_left_adjoint(d.mult):
        raise NotRigidCandidate("multiplication is not a left adjoint")
    return mirror(d.mult)


# -- Frobenius --------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusDatum:
    algebra: AlgebraDatum
    counit: Cospan
    comult: Cospan
    left_counitality: TwoCell
    right_counitality: TwoCell


def counitality_composites(A: FinSet, counit: Cospan, comult: Cospan) -> tuple[Cospan, Cospan]:
    """``(ε⊗id)δ`` and ``(id⊗ε)δ``, each followed by the unitor back to ``A``."""
    idA = identity_cospan(A)
    left = compose_chain(comult, tensor(counit, idA), right_way(unitor_left_fn(A)))
    right = compose_chain(comult, tensor(idA, counit), right_way(unitor_right_fn(A)))
    return left, right


def verify_frobenius(d: AlgebraDatum, counit: Optional[Cospan] = None,
                     comult: Optional[Cospan] = None) -> FrobeniusDatum:
    """Counitality witnesses for ``ε`` and ``δ`` (by default the mirrors of ``η``, ``μ``).

    Raises :class:`CounitalityFailed` naming the failing side.
    """
    A = d.carrier
    eps = counit if counit is not None else counit_of(d)
    delta = comult if comult is not None else comult_of(d)
    idA = identity_cospan(A)
    if delta.src != A or delta.tgt != coproduct(A, A).obj:
        raise CounitalityFailed("both", "comultiplication has the wrong boundary")
    lhs, rhs = counitality_composites(A, eps, delta)
    w_left, w_right = find_two_iso(lhs, idA), find_two_iso(rhs, idA)
    if w_left is None and w_right is None:
        raise CounitalityFailed("both")
    if w_left is None or w_right is None:
        raise CounitalityFailed("left" if w_left is None else "right")
    return FrobeniusDatum(d, eps, delta, w_left, w_right)


# -- duality and transpose --------------------------------------------------

@dataclass(frozen=True)
class DualityData:
    obj: FinSet
    dual: FinSet
    ev: Cospan
    coev: Cospan
    zigzag_obj: TwoCell
    zigzag_dual: TwoCell


def zigzag_composites(X: FinSet, Xd: FinSet, ev: Cospan, coev: Cospan) -> tuple[Cospan, Cospan]:
    """The snake composites ``X → X`` and ``X^∨ → X^∨`` with all unitors/associators."""
    idX, idXd = identity_cospan(X), identity_cospan(Xd)
    snake_x = compose_chain(
        right_way(inverse(unitor_left_fn(X))),
        tensor(coev, idX),
        right_way(associator_fn(X, Xd, X)),
        tensor(idX, ev),
        right_way(unitor_right_fn(X)),
    )
    snake_xd = compose_chain(
        right_way(inverse(unitor_right_fn(Xd))),
        tensor(idXd, coev),
        right_way(inverse(associator_fn(Xd, X, Xd))),
        tensor(ev, idXd),
        right_way(unitor_left_fn(Xd)),
    )
    return snake_x, snake_xd


def self_duality(A: FinSet) -> DualityData:
    """``A`` is its own dual with ``ev = A⊔A → A ← ∅`` and ``coev`` its mirror."""
    ev = Cospan(coproduct(A, A).obj, EMPTY, A, fold(A), initial_map(A))
    coev = mirror(ev)
    snake_x, snake_xd = zigzag_composites(A, A, ev, coev)
    w1 = find_two_iso(snake_x, identity_cospan(A))
    w2 = find_two_iso(snake_xd, identity_cospan(A))
    if w1 is None or w2 is None:
        raise AssertionError("self-duality zigzags fail; this is a bug")
    return DualityData(A, A, ev, coev, w1, w2)


def transpose_general(c: Cospan, dA: Optional[DualityData] = None,
                      dB: Optional[DualityData] = None) -> Cospan:
    """Transpose ``B^∨ ↛ A^∨`` of ``c: A ↛ B``, pasted from coevaluation and evaluation."""
    dA = dA or self_duality(c.src)
    dB = dB or self_duality(c.tgt)
    Ad, B, Bd = dA.dual, dB.obj, dB.dual
    return compose_chain(
        right_way(inverse(unitor_right_fn(Bd))),
        tensor(identity_cospan(Bd), dA.coev),
        tensor(identity_cospan(Bd), tensor(c, identity_cospan(Ad))),
        right_way(inverse(associator_fn(Bd, B, Ad))),
        tensor(dB.ev, identity_cospan(Ad)),
        right_way(unitor_left_fn(Ad)),
    )


def verify_adjoint_to_transpose(f) -> bool:
    """``right_way(f)`` is left adjoint to its mirror, which is also its transpose."""
    left = right_way(f)
    right = mirror(left)
    w = construct_right_adjoint(left)
    if w.right != right:
        return False
    if not verify_adjunction(AdjunctionWitness(left, right, w.unit, w.counit)):
        return False
    return is_two_isomorphic(transpose_general(left), right)


# -- rigidity ---------------------------------------------------------------

@dataclass
class ProjectionFormula:
    """The pasted cell ``β_M(id⊗μ^R⊗id) ⇒ μ^R β_N`` and its pieces."""

    cell: TwoCell
    steps: list[TwoCell]
    canonical: bool


def bimodule_actions(d: AlgebraDatum) -> tuple[Cospan, Cospan]:
    """Bi-actions ``β_M: (A⊔(A⊔A))⊔A ↛ A⊔A`` on ``M = A⊗A`` and ``β_N: (A⊔A)⊔A ↛ A``."""
    A, mu = d.carrier, d.mult
    AA = coproduct(A, A).obj
    reassoc = right_way(_middle_reassoc(A))
    beta_m = hcompose(tensor(mu, mu), reassoc)
    beta_n = hcompose(mu, tensor(mu, identity_cospan(A)))
    assert beta_m.tgt == AA
    return beta_m, beta_n


def _middle_reassoc(A: FinSet):
    """``(A ⊔ (A ⊔ A)) ⊔ A → (A ⊔ A) ⊔ (A ⊔ A)``."""
    AA = coproduct(A, A).obj
    a1 = associator_fn(A, AA, A)                                # → A⊔((A⊔A)⊔A)
    inner = coproduct_fn(identity(A), associator_fn(A, A, A))   # → A⊔(A⊔(A⊔A))
    outer = inverse(associator_fn(A, A, AA))                    # → (A⊔A)⊔(A⊔A)
    return compose_fn(outer, compose_fn(inner, a1))


def projection_formula_cell(d: AlgebraDatum) -> ProjectionFormula:
    """Paste ``u_μ``, the bimodule isomorphism and ``c_μ`` into one 2-cell.

    The middle isomorphism is found by search; ``canonical`` records whether
    its source apex is covered by its legs, in which case it is the only one.
    """
    A, mu = d.carrier, d.mult
    if not is_left_adjoint(mu):
        raise NotLeftAdjoint("multiplication is not a left adjoint")
    adj = construct_right_adjoint(mu)
    mu_r = adj.right
    idA = identity_cospan(A)
    beta_m, beta_n = bimodule_actions(d)

    X = hcompose(beta_m, _tensor3(idA, mu_r, idA))
    Y = hcompose(mu_r, beta_n)
    step1 = vcompose_chain(invert_cell(unitor_left(X)), whisker_right(adj.unit, X))
    mid_target = hcompose(Y, _tensor3(idA, hcompose(mu, mu_r), idA))
    iso = find_two_iso(step1.target, mid_target)
    if iso is None:
        raise AssertionError("bimodule comparison is not invertible; this is a bug")
    counit3 = tensor_cells(tensor_cells(identity_cell(idA), adj.counit), identity_cell(idA))
    step3 = vcompose_chain(whisker_left(Y, counit3), unitor_right(Y))
    cell = vcompose_chain(step1, iso, step3)
    return ProjectionFormula(cell, [step1, iso, step3], cell_is_unique(step1.target))


@dataclass
class RigidityReport:
    unit_left_adjoint: bool
    mult_left_adjoint: bool
    projection_invertible: bool
    projection: Optional[ProjectionFormula] = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.unit_left_adjoint and self.mult_left_adjoint and self.projection_invertible

    def __bool__(self):
        return self.ok


def verify_rigid(d: AlgebraDatum) -> RigidityReport:
    unit_ok = is_left_adjoint(d.unit)
    mult_ok = is_left_adjoint(d.mult)
    report = RigidityReport(unit_ok, mult_ok, False)
    report.notes.append("axioms checked up to invertible 2-cells only")
    if not unit_ok:
        report.notes.append("unit's wrong-way leg is not a bijection")
    if not mult_ok:
        report.notes.append("multiplication's wrong-way leg is not a bijection")
        return report
    pf = projection_formula_cell(d)
    report.projection = pf
    report.projection_invertible = is_invertible_cell(pf.cell)
    if not pf.canonical:
        report.notes.append("bimodule comparison chosen by search, not forced by legs")
    return report


# -- classification ---------------------------------------------------------

@dataclass(frozen=True)
class Classified:
    mult: Cospan
    iso_to_fold: TwoCell


def classify_unital_multiplications(A: FinSet, apex_bound: int) -> list[Classified]:
    """All ``μ: A⊔A ↛ A`` (apex ``<= apex_bound``) unital for the right-way unit.

    Every solution must be 2-isomorphic to the fold; otherwise
    :class:`ClassificationCounterexample` is raised.
    """
    unit = right_way(initial_map(A))
    fold_c = right_way(fold(A))
    out = []
    for mu in enumerate_cospans(coproduct(A, A).obj, A, apex_bound):
        w = algebra_witnesses(A, unit, mu, axioms=("left_unit", "right_unit"))
        if w["left_unit"] is None or w["right_unit"] is None:
            continue
        iso = find_two_iso(mu, fold_c)
        if iso is None:
            raise ClassificationCounterexample(f"unital multiplication {mu!r} is not the fold")
        out.append(Classified(mu, iso))
    return out


def rigidity_square(A: FinSet) -> CommutingSquare:
    """The pushout square ``id⊔∇⊔id: A⁴ → A³``, ``∇⊔∇: A⁴ → A²`` over ``∇₃``, ``∇``.

    Here ``A⁴ = (A⊔A)⊔(A⊔A)`` and ``A³ = (A⊔A)⊔A``, the shapes met by the
    bimodule actions in :func:`projection_formula_cell`.
    """
    AA = coproduct(A, A).obj
    A4 = coproduct(AA, AA).obj
    A3 = coproduct(AA, A).obj
    f = make_fn(A4, A3, {x: {"L.L": "L.L", "L.R": "L.R", "R.L": "L.R", "R.R": "R"}[x[:3]] + x[3:]
                         for x in A4})
    g = make_fn(A4, AA, {x: x[0] + x[3:] for x in A4})
    g2 = make_fn(A3, A, {x: x.split(".", 2)[-1] if x.startswith("L.") else x[2:] for x in A3})
    return CommutingSquare(f, g, g2, fold(A))
