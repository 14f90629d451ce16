"""The 2-category of cospans of finite sets, truncated at 2-cells.

A cospan ``A → X ← B`` is a 1-cell ``A ↛ B``; a 2-cell is a function between
apexes commuting with both legs.  Horizontal composition is computed by
pushout, and ``hcompose(c2, c1)`` means "first ``c1``, then ``c2``".

Coherence isomorphisms (unitors, associators) are computed explicitly as
mediating bijections out of iterated pushouts so that every comparison made
elsewhere is a literal equality of functions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import NotParallel, TypeMismatch
from .finset import (
    EMPTY,
    FinFn,
    FinSet,
    canonical_set,
    compose_fn,
    coproduct,
    coproduct_fn,
    identity,
    initial_map,
    inverse,
    is_bijection,
    mediate,
    pushout,
    restricted_growth,
    swap_fn,
    verify_pushout_universal,
)


@dataclass(frozen=True)
class Cospan:
    src: FinSet
    tgt: FinSet
    apex: FinSet
    left: FinFn
    right: FinFn

    def __post_init__(self):
        if self.left.dom != self.src or self.left.cod != self.apex:
            raise TypeMismatch("left leg must go from src to apex")
        if self.right.dom != self.tgt or self.right.cod != self.apex:
            raise TypeMismatch("right leg must go from tgt to apex")

    def __repr__(self):
        return f"Cospan({self.src!r} -> {self.apex!r} <- {self.tgt!r})"


@dataclass(frozen=True)
class TwoCell:
    """A 2-cell ``source ⇒ target`` between parallel cospans."""

    source: Cospan
    target: Cospan
    map: FinFn

    def __post_init__(self):
        s, t = self.source, self.target
        if s.src != t.src or s.tgt != t.tgt:
            raise NotParallel("2-cell between non-parallel cospans")
        if self.map.dom != s.apex or self.map.cod != t.apex:
            raise TypeMismatch("2-cell map must go between the apexes")
        if compose_fn(self.map, s.left) != t.left:
            raise TypeMismatch("2-cell does not commute with the left legs")
        if compose_fn(self.map, s.right) != t.right:
            raise TypeMismatch("2-cell does not commute with the right legs")


# -- 1-cells ----------------------------------------------------------------

def identity_cospan(A: FinSet) -> Cospan:
    i = identity(A)
    return Cospan(A, A, A, i, i)


def right_way(f: FinFn) -> Cospan:
    """``A --f--> B == B``."""
    return Cospan(f.dom, f.cod, f.cod, f, identity(f.cod))


def mirror(c: Cospan) -> Cospan:
    return Cospan(c.tgt, c.src, c.apex, c.right, c.left)


def wrong_way(f: FinFn) -> Cospan:
    """``B == B <--f-- A``, a 1-cell ``B ↛ A``."""
    return mirror(right_way(f))


@lru_cache(maxsize=1 << 15)
def _compose(c2: Cospan, c1: Cospan):
    if c1.tgt != c2.src:
        raise TypeMismatch(f"cannot compose: tgt {c1.tgt!r} != src {c2.src!r}")
    po = pushout(c1.right, c2.left)
    comp = Cospan(c1.src, c2.tgt, po.apex,
                  compose_fn(po.p1, c1.left), compose_fn(po.p2, c2.right))
    return comp, po


def hcompose(c2: Cospan, c1: Cospan) -> Cospan:
    """Composite ``A ↛ C`` of ``c1: A ↛ B`` and ``c2: B ↛ C``."""
    return _compose(c2, c1)[0]


def compose_chain(*cs: Cospan) -> Cospan:
    """Composite of ``c1, c2, ..., cn`` in diagrammatic order."""
    out = cs[0]
    for c in cs[1:]:
        out = hcompose(c, out)
    return out


def tensor(c1: Cospan, c2: Cospan) -> Cospan:
    return Cospan(coproduct(c1.src, c2.src).obj, coproduct(c1.tgt, c2.tgt).obj,
                  coproduct(c1.apex, c2.apex).obj,
                  coproduct_fn(c1.left, c2.left), coproduct_fn(c1.right, c2.right))


def tensor_many_cospans(cs: Sequence[Cospan]) -> Cospan:
    """Left-nested tensor, matching :func:`finset.tensor_many` on boundaries."""
    if not cs:
        return identity_cospan(EMPTY)
    out = cs[0]
    for c in cs[1:]:
        out = tensor(out, c)
    return out


def normal_form(c: Cospan) -> Cospan:
    """``right_way(right⁻¹ ∘ left)`` for a cospan with bijective right leg."""
    return right_way(compose_fn(inverse(c.right), c.left))


# -- 2-cells ----------------------------------------------------------------

def identity_cell(c: Cospan) -> TwoCell:
    return TwoCell(c, c, identity(c.apex))


def is_invertible_cell(a: TwoCell) -> bool:
    return is_bijection(a.map)


def invert_cell(a: TwoCell) -> TwoCell:
    return TwoCell(a.target, a.source, inverse(a.map))


def vcompose(b: TwoCell, a: TwoCell) -> TwoCell:
    """``b ∘ a`` for ``a: c ⇒ c'`` and ``b: c' ⇒ c''``."""
    if a.target != b.source:
        raise TypeMismatch("vertical composition of non-matching cells")
    return TwoCell(a.source, b.target, compose_fn(b.map, a.map))


def vcompose_chain(*cells: TwoCell) -> TwoCell:
    """Vertical composite of ``a1, a2, ...`` applied in that order."""
    out = cells[0]
    for c in cells[1:]:
        out = vcompose(c, out)
    return out


def whisker_left(g: Cospan, a: TwoCell) -> TwoCell:
    """``g ⋆ a : g∘c ⇒ g∘c'`` for ``a: c ⇒ c'``."""
    src, po = _compose(g, a.source)
    tgt, po2 = _compose(g, a.target)
    u = verify_pushout_universal(po, compose_fn(po2.p1, a.map), po2.p2)
    return TwoCell(src, tgt, u)


def whisker_right(a: TwoCell, g: Cospan) -> TwoCell:
    """``a ⋆ g : c∘g ⇒ c'∘g`` for ``a: c ⇒ c'``."""
    src, po = _compose(a.source, g)
    tgt, po2 = _compose(a.target, g)
    u = verify_pushout_universal(po, po2.p1, compose_fn(po2.p2, a.map))
    return TwoCell(src, tgt, u)


def hcompose_cells(b: TwoCell, a: TwoCell) -> TwoCell:
    """Horizontal composite ``b ∘ a`` of ``a: c ⇒ c'`` and ``b: d ⇒ d'``."""
    return vcompose(whisker_left(b.target, a), whisker_right(b, a.source))


def tensor_cells(a: TwoCell, b: TwoCell) -> TwoCell:
    return TwoCell(tensor(a.source, b.source), tensor(a.target, b.target),
                   coproduct_fn(a.map, b.map))


# -- coherence isomorphisms -------------------------------------------------

def unitor_left(c: Cospan) -> TwoCell:
    """``id_B ∘ c ⇒ c``."""
    comp, po = _compose(identity_cospan(c.tgt), c)
    u = mediate([po.p1, po.p2], [identity(c.apex), c.right])
    return TwoCell(comp, c, u)


def unitor_right(c: Cospan) -> TwoCell:
    """``c ∘ id_A ⇒ c``."""
    comp, po = _compose(c, identity_cospan(c.src))
    u = mediate([po.p1, po.p2], [c.left, identity(c.apex)])
    return TwoCell(comp, c, u)


def associator(c3: Cospan, c2: Cospan, c1: Cospan) -> TwoCell:
    """``(c3∘c2)∘c1 ⇒ c3∘(c2∘c1)``."""
    q, q_po = _compose(c3, c2)
    lhs, l_po = _compose(q, c1)
    r, r_po = _compose(c2, c1)
    rhs, s_po = _compose(c3, r)
    legs = [l_po.p1, compose_fn(l_po.p2, q_po.p1), compose_fn(l_po.p2, q_po.p2)]
    probes = [compose_fn(s_po.p1, r_po.p1), compose_fn(s_po.p1, r_po.p2), s_po.p2]
    return TwoCell(lhs, rhs, mediate(legs, probes))


def tensor_symmetry(c1: Cospan, c2: Cospan) -> FinFn:
    """The swap bijection ``apex(c1⊗c2) → apex(c2⊗c1)``.

    It intertwines the legs of the two tensors with the swap bijections of
    the boundaries; a :class:`TypeMismatch` signals that it does not.
    """
    sigma = swap_fn(c1.apex, c2.apex)
    t12, t21 = tensor(c1, c2), tensor(c2, c1)
    if compose_fn(sigma, t12.left) != compose_fn(t21.left, swap_fn(c1.src, c2.src)):
        raise TypeMismatch("swap does not intertwine the left legs")
    if compose_fn(sigma, t12.right) != compose_fn(t21.right, swap_fn(c1.tgt, c2.tgt)):
        raise TypeMismatch("swap does not intertwine the right legs")
    return sigma


# -- 2-cell search ----------------------------------------------------------

def _forced_assignment(c: Cospan, d: Cospan) -> Optional[dict[str, str]]:
    forced: dict[str, str] = {}
    for leg_c, leg_d in ((c.left, d.left), (c.right, d.right)):
        for x, y in zip(leg_c.images, leg_d.images):
            if forced.setdefault(x, y) != y:
                return None
    return forced


def enumerate_cells(c: Cospan, d: Cospan) -> Iterator[TwoCell]:
    """All 2-cells ``c ⇒ d``.

    Apex elements hit by a leg are forced; the remaining elements range over
    the whole target apex.
    """
    if c.src != d.src or c.tgt != d.tgt:
        raise NotParallel("cells only exist between parallel cospans")
    forced = _forced_assignment(c, d)
    if forced is None:
        return
    free = [x for x in c.apex if x not in forced]
    for choice in itertools.product(d.apex.elements, repeat=len(free)):
        mapping = dict(forced)
        mapping.update(zip(free, choice))
        yield TwoCell(c, d, FinFn.from_mapping(c.apex, d.apex, mapping))


def cell_is_unique(c: Cospan) -> bool:
    """True when the legs of ``c`` cover its apex, so cells out of ``c`` are unique."""
    return len(c.left.image() | c.right.image()) == len(c.apex)


def find_two_iso(c: Cospan, d: Cospan) -> Optional[TwoCell]:
    """An invertible 2-cell ``c ⇒ d``, or ``None``.

    Leg images pin down the bijection on covered elements.  An uncovered
    element of ``c`` can only go to an uncovered element of ``d``, and any
    pairing of those works, so they are matched in sorted order.
    """
    if c.src != d.src or c.tgt != d.tgt:
        raise NotParallel("2-isomorphism search needs parallel cospans")
    if len(c.apex) != len(d.apex):
        return None
    forced = _forced_assignment(c, d)
    if forced is None or len(set(forced.values())) != len(forced):
        return None
    free_c = [x for x in c.apex if x not in forced]
    hit = set(forced.values())
    free_d = [y for y in d.apex if y not in hit]
    if len(free_c) != len(free_d):
        return None
    forced.update(zip(free_c, free_d))
    return TwoCell(c, d, FinFn.from_mapping(c.apex, d.apex, forced))


def is_two_isomorphic(c: Cospan, d: Cospan) -> bool:
    return find_two_iso(c, d) is not None


# -- enumeration ------------------------------------------------------------

def enumerate_cospans(A: FinSet, B: FinSet, max_apex: int, min_apex: int = 0,
                      up_to_iso: bool = True) -> Iterator[Cospan]:
    """Cospans ``A ↛ B`` with apex size in ``min_apex..max_apex``.

    With ``up_to_iso`` each isomorphism class (relabelling of the apex) is
    produced exactly once; apex labels are ``x0, x1, ...`` numbered in order
    of first appearance along ``A`` then ``B``.
    """
    n_a = len(A)
    for size in range(min_apex, max_apex + 1):
        X = canonical_set(size)
        xs = [f"x{i}" for i in range(size)]
        if up_to_iso:
            for rgs in restricted_growth(n_a + len(B), size):
                images = [xs[i] for i in rgs]
                yield Cospan(A, B, X, FinFn(A, X, tuple(images[:n_a])),
                             FinFn(B, X, tuple(images[n_a:])))
        else:
            for images in itertools.product(X.elements, repeat=n_a + len(B)):
                yield Cospan(A, B, X, FinFn(A, X, images[:n_a]), FinFn(B, X, images[n_a:]))


def all_small_cospans(max_size: int) -> Iterator[Cospan]:
    """Every cospan with ``|A|, |B|, |apex| <= max_size``, one per apex-iso class."""
    for a in range(max_size + 1):
        for b in range(max_size + 1):
            yield from enumerate_cospans(canonical_set(a, "a"), canonical_set(b, "b"), max_size)


def unit_cospan() -> Cospan:
    return identity_cospan(EMPTY)


def empty_map_cospan(A: FinSet) -> Cospan:
    """The right-way image of ``∅ → A``."""
    return right_way(initial_map(A))

