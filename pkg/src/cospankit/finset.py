"""Finite sets and functions, with coproducts and pushouts.

Sets are sorted tuples of string labels, functions are tuples of images
aligned with the domain.  Both are immutable and hashable, so they can be
used as dictionary keys and cached freely.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import DuplicateLabel, NotACocone, TypeMismatch


@dataclass(frozen=True)
class FinSet:
    """A finite set of string labels, kept in lexicographic order."""

    elements: tuple[str, ...] = ()

    def __post_init__(self):
        elems = tuple(sorted(self.elements))
        for a, b in zip(elems, elems[1:]):
            if a == b:
                raise DuplicateLabel(f"label {a!r} occurs more than once")
        object.__setattr__(self, "elements", elems)

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return "{" + ",".join(self.elements) + "}"


EMPTY = FinSet()


@dataclass(frozen=True)
class FinFn:
    """A total function between finite sets.

    ``images[i]`` is the image of ``dom.elements[i]``.
    """

    dom: FinSet
    cod: FinSet
    images: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(self.images) != len(self.dom):
            raise TypeMismatch(
                f"function on {self.dom!r} needs {len(self.dom)} images, got {len(self.images)}")
        for x, y in zip(self.dom.elements, self.images):
            if y not in self.cod:
                raise TypeMismatch(f"image {y!r} of {x!r} is not in codomain {self.cod!r}")

    @classmethod
    def from_mapping(cls, dom: FinSet, cod: FinSet, mapping: Mapping[str, str]) -> "FinFn":
        missing = [x for x in dom if x not in mapping]
        if missing:
            raise TypeMismatch(f"mapping undefined on {missing}")
        extra = [x for x in mapping if x not in dom]
        if extra:
            raise TypeMismatch(f"mapping defined outside the domain: {extra}")
        return cls(dom, cod, tuple(mapping[x] for x in dom.elements))

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(zip(self.dom.elements, self.images))

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def image(self) -> set[str]:
        return set(self.images)

    def fiber(self, y: str) -> list[str]:
        return [x for x, fx in zip(self.dom.elements, self.images) if fx == y]

    def __repr__(self):
        body = ",".join(f"{x}->{y}" for x, y in zip(self.dom.elements, self.images))
        return f"FinFn({body} : {self.dom!r}->{self.cod!r})"


def make_set(labels: Iterable[str]) -> FinSet:
    return FinSet(tuple(labels))


def make_fn(dom: FinSet, cod: FinSet, mapping: Mapping[str, str]) -> FinFn:
    return FinFn.from_mapping(dom, cod, mapping)


def identity(A: FinSet) -> FinFn:
    return FinFn(A, A, A.elements)


def initial_map(A: FinSet) -> FinFn:
    """The unique function from the empty set."""
    return FinFn(EMPTY, A, ())


def compose_fn(g: FinFn, f: FinFn) -> FinFn:
    """``g ∘ f``."""
    if f.cod != g.dom:
        raise TypeMismatch(f"cannot compose: cod(f)={f.cod!r} but dom(g)={g.dom!r}")
    gm = g.mapping
    return FinFn(f.dom, g.cod, tuple(gm[y] for y in f.images))


def is_injective(f: FinFn) -> bool:
    return len(set(f.images)) == len(f.images)


def is_surjective(f: FinFn) -> bool:
    return len(set(f.images)) == len(f.cod)


def is_bijection(f: FinFn) -> bool:
    return len(f.dom) == len(f.cod) and is_injective(f)


def inverse(f: FinFn) -> FinFn:
    if not is_bijection(f):
        raise TypeMismatch(f"{f!r} is not a bijection")
    return FinFn.from_mapping(f.cod, f.dom, {y: x for x, y in f.mapping.items()})


# -- coproducts -------------------------------------------------------------

def _tag(prefix: str, x: str) -> str:
    return f"{prefix}.{x}"


@dataclass(frozen=True)
class Coproduct:
    obj: FinSet
    inj1: FinFn
    inj2: FinFn

    def __iter__(self):
        return iter((self.obj, self.inj1, self.inj2))


@lru_cache(maxsize=None)
def coproduct(A: FinSet, B: FinSet) -> Coproduct:
    """Disjoint union, tagging left labels ``L.x`` and right labels ``R.x``."""
    obj = FinSet(tuple(_tag("L", a) for a in A) + tuple(_tag("R", b) for b in B))
    inj1 = FinFn(A, obj, tuple(_tag("L", a) for a in A.elements))
    inj2 = FinFn(B, obj, tuple(_tag("R", b) for b in B.elements))
    return Coproduct(obj, inj1, inj2)


def coproduct_fn(f: FinFn, g: FinFn) -> FinFn:
    """``f ⊔ g : dom f ⊔ dom g → cod f ⊔ cod g``."""
    src = coproduct(f.dom, g.dom)
    tgt = coproduct(f.cod, g.cod)
    mapping = {}
    for x in f.dom:
        mapping[src.inj1(x)] = tgt.inj1(f(x))
    for x in g.dom:
        mapping[src.inj2(x)] = tgt.inj2(g(x))
    return FinFn.from_mapping(src.obj, tgt.obj, mapping)


def copair(f: FinFn, g: FinFn) -> FinFn:
    """``[f, g] : dom f ⊔ dom g → C`` for ``f, g`` with common codomain ``C``."""
    if f.cod != g.cod:
        raise TypeMismatch("copairing needs a common codomain")
    src = coproduct(f.dom, g.dom)
    mapping = {src.inj1(x): f(x) for x in f.dom}
    mapping.update({src.inj2(x): g(x) for x in g.dom})
    return FinFn.from_mapping(src.obj, f.cod, mapping)


def fold(A: FinSet) -> FinFn:
    """The codiagonal ``A ⊔ A → A``."""
    return copair(identity(A), identity(A))


def tensor_many(sets: Sequence[FinSet]) -> tuple[FinSet, list[FinFn]]:
    """Left-nested coproduct ``((S0 ⊔ S1) ⊔ S2) ...`` with its injections.

    The empty list gives the empty set and a single set is returned as is.
    """
    if not sets:
        return EMPTY, []
    obj, injs = sets[0], [identity(sets[0])]
    for S in sets[1:]:
        cp = coproduct(obj, S)
        injs = [compose_fn(cp.inj1, i) for i in injs] + [cp.inj2]
        obj = cp.obj
    return obj, injs


def unitor_left_fn(A: FinSet) -> FinFn:
    """``∅ ⊔ A → A``."""
    return copair(initial_map(A), identity(A))


def unitor_right_fn(A: FinSet) -> FinFn:
    """``A ⊔ ∅ → A``."""
    return copair(identity(A), initial_map(A))


def associator_fn(A: FinSet, B: FinSet, C: FinSet) -> FinFn:
    """``(A ⊔ B) ⊔ C → A ⊔ (B ⊔ C)``."""
    bc = coproduct(B, C)
    a_bc = coproduct(A, bc.obj)
    left = copair(a_bc.inj1, compose_fn(a_bc.inj2, bc.inj1))
    return copair(left, compose_fn(a_bc.inj2, bc.inj2))


def swap_fn(A: FinSet, B: FinSet) -> FinFn:
    """``A ⊔ B → B ⊔ A``."""
    ba = coproduct(B, A)
    return copair(ba.inj2, ba.inj1)


# -- pushouts ---------------------------------------------------------------

@dataclass(frozen=True)
class Pushout:
    """A pushout cocone ``B --p1--> P <--p2-- C`` under ``B <-f- A -g-> C``."""

    apex: FinSet
    p1: FinFn
    p2: FinFn
    f: FinFn
    g: FinFn

    def __iter__(self):
        return iter((self.apex, self.p1, self.p2))


class _UnionFind:
    """Union-find over ``0..n-1``; the root of a class is its smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            lo, hi = min(rx, ry), max(rx, ry)
            self.parent[hi] = lo


@lru_cache(maxsize=1 << 16)
def pushout(f: FinFn, g: FinFn) -> Pushout:
    """Pushout of ``f: A → B`` and ``g: A → C``.

    The apex is ``B ⊔ C`` modulo ``f(a) ~ g(a)``.  Each class is labelled by
    its first member in the order ``B`` then ``C``, tagged ``L.`` or ``R.``.
    """
    if f.dom != g.dom:
        raise TypeMismatch(f"pushout legs have different domains {f.dom!r} and {g.dom!r}")
    B, C = f.cod, g.cod
    nb = len(B)
    uf = _UnionFind(nb + len(C))
    for fb, gc in zip(f.images, g.images):
        uf.union(B.index[fb], nb + C.index[gc])
    labels = [_tag("L", b) for b in B.elements] + [_tag("R", c) for c in C.elements]
    cls = [labels[uf.find(i)] for i in range(len(labels))]
    apex = FinSet(tuple(set(cls)))
    p1 = FinFn(B, apex, tuple(cls[:nb]))
    p2 = FinFn(C, apex, tuple(cls[nb:]))
    return Pushout(apex, p1, p2, f, g)


def mediate(legs: Sequence[FinFn], probes: Sequence[FinFn], cod: Optional[FinSet] = None) -> FinFn:
    """The map ``u`` out of a jointly surjective family with ``u ∘ legs[k] = probes[k]``.

    Raises :class:`NotACocone` when the probes are inconsistent or when the
    legs do not cover their common codomain (so ``u`` would not be unique).
    """
    if not legs:
        raise NotACocone("empty family")
    P = legs[0].cod
    if cod is None:
        cod = probes[0].cod
    u: dict[str, str] = {}
    for leg, probe in zip(legs, probes):
        if leg.cod != P or probe.dom != leg.dom or probe.cod != cod:
            raise TypeMismatch("mediating family has mismatched boundaries")
        for x, px in zip(leg.dom.elements, leg.images):
            y = probe(x)
            prev = u.setdefault(px, y)
            if prev != y:
                raise NotACocone(f"element {px!r} would map to both {prev!r} and {y!r}")
    if len(u) != len(P):
        raise NotACocone("family is not jointly surjective")
    return FinFn.from_mapping(P, cod, u)


def verify_pushout_universal(po: Pushout, h1: FinFn, h2: FinFn) -> FinFn:
    """Unique ``u: P → Q`` with ``u∘p1 = h1`` and ``u∘p2 = h2``."""
    if h1.cod != h2.cod or h1.dom != po.p1.dom or h2.dom != po.p2.dom:
        raise TypeMismatch("probe cocone does not match the pushout boundaries")
    if compose_fn(h1, po.f) != compose_fn(h2, po.g):
        raise NotACocone("probe does not satisfy h1∘f = h2∘g")
    return mediate([po.p1, po.p2], [h1, h2])


# -- enumeration ------------------------------------------------------------

def enumerate_functions(A: FinSet, B: FinSet) -> Iterator[FinFn]:
    """All functions ``A → B`` in lexicographic order of their image tuples."""
    for images in itertools.product(B.elements, repeat=len(A)):
        yield FinFn(A, B, images)


def canonical_set(n: int, prefix: str = "x") -> FinSet:
    return FinSet(tuple(f"{prefix}{i}" for i in range(n)))


def enumerate_sets(max_size: int, prefix: str = "x") -> Iterator[FinSet]:
    """One representative per isomorphism class, sizes ``0..max_size``."""
    for n in range(max_size + 1):
        yield canonical_set(n, prefix)


def restricted_growth(n: int, max_blocks: int) -> Iterator[tuple[int, ...]]:
    """Set partitions of ``0..n-1`` into at most ``max_blocks`` blocks.

    Each partition is a restricted growth string: entry ``i`` is the block of
    ``i`` and blocks are numbered in order of first appearance.
    """
    def rec(prefix, used):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(min(used + 1, max_blocks)):
            prefix.append(b)
            yield from rec(prefix, max(used, b + 1))
            prefix.pop()
    yield from rec([], 0)
