"""The symmetric monoidal envelope of the bimodule operad, made explicit.

Objects are finite sets split into three parts ``(L, M, R)``.  A morphism is
a function together with a linear order on each fiber such that

* fibers over ``L`` (resp. ``R``) points lie in ``L`` (resp. ``R``);
* a fiber over an ``M`` point holds exactly one ``M`` element and its order
  reads ``L``-part, then the ``M`` element, then the ``R``-part.

Composition orders fibers lexicographically: outer order from ``g``, inner
order from ``f``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .cospan import (
    Cospan,
    compose_chain,
    identity_cospan,
    right_way,
    tensor_many_cospans,
)
from .errors import DuplicateLabel, GenerationGap, MissingGeneratorImage, TypeMismatch
from .finset import FinSet, compose_fn, make_fn, make_set, tensor_many

PARTS = ("L", "M", "R")


@dataclass(frozen=True)
class EnvBMObject:
    L: FinSet = FinSet()
    M: FinSet = FinSet()
    R: FinSet = FinSet()

    def __post_init__(self):
        seen = set()
        for part in (self.L, self.M, self.R):
            clash = seen.intersection(part.elements)
            if clash:
                raise DuplicateLabel(f"labels {sorted(clash)} appear in two parts")
            seen.update(part.elements)

    @cached_property
    def elements(self) -> tuple:
        return self.L.elements + self.M.elements + self.R.elements

    @cached_property
    def part_of(self) -> dict:
        return {x: p for p in PARTS for x in getattr(self, p).elements}

    def sizes(self) -> tuple[int, int, int]:
        return len(self.L), len(self.M), len(self.R)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"({self.L!r},{self.M!r},{self.R!r})"


def envbm_object(L: Iterable[str] = (), M: Iterable[str] = (), R: Iterable[str] = ()) -> EnvBMObject:
    return EnvBMObject(make_set(L), make_set(M), make_set(R))


def canonical_object(nl: int, nm: int, nr: int) -> EnvBMObject:
    return envbm_object([f"l{i}" for i in range(nl)],
                        [f"m{i}" for i in range(nm)],
                        [f"r{i}" for i in range(nr)])


@dataclass(frozen=True)
class EnvBMMorphism:
    """``images`` follows ``dom.elements``; ``orders`` follows ``cod.elements``."""

    dom: EnvBMObject
    cod: EnvBMObject
    images: tuple
    orders: tuple

    @cached_property
    def map(self) -> dict:
        return dict(zip(self.dom.elements, self.images))

    def order(self, y) -> tuple:
        return self.orders[self.cod.elements.index(y)]

    def __repr__(self):
        fibers = ", ".join(f"{y}<-[{' < '.join(o)}]" for y, o in zip(self.cod.elements, self.orders))
        return f"{self.dom!r}->{self.cod!r} {{{fibers}}}"


def envbm_morphism(dom: EnvBMObject, cod: EnvBMObject, mapping: dict, orders: dict) -> EnvBMMorphism:
    """Build a morphism; unlisted fibers get an empty order.  No validation."""
    if set(mapping) != set(dom.elements):
        raise TypeMismatch("mapping must be defined exactly on the domain")
    extra = set(orders) - set(cod.elements)
    if extra:
        raise TypeMismatch(f"orders given for non-codomain points {sorted(extra)}")
    return EnvBMMorphism(
        dom, cod,
        tuple(mapping[x] for x in dom.elements),
        tuple(tuple(orders.get(y, ())) for y in cod.elements),
    )


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def envbm_validate(m: EnvBMMorphism) -> ValidationReport:
    bad = []
    dpart, cpart = m.dom.part_of, m.cod.part_of
    for x, y in m.map.items():
        if y not in cpart:
            bad.append(f"{x} maps outside the codomain")
    for y, order in zip(m.cod.elements, m.orders):
        fiber = sorted(x for x, t in m.map.items() if t == y)
        if sorted(order) != fiber or len(set(order)) != len(order):
            bad.append(f"order over {y} is not a permutation of its fiber")
            continue
        kinds = [dpart[x] for x in order]
        p = cpart[y]
        if p in ("L", "R"):
            if any(k != p for k in kinds):
                bad.append(f"fiber over {p}-point {y} leaves {p}")
        else:
            if kinds.count("M") != 1:
                bad.append(f"fiber over M-point {y} has {kinds.count('M')} M elements")
            elif kinds != sorted(kinds, key=PARTS.index):
                bad.append(f"fiber over M-point {y} is not ordered L < M < R")
    return ValidationReport(not bad, bad)


def envbm_identity(X: EnvBMObject) -> EnvBMMorphism:
    return EnvBMMorphism(X, X, X.elements, tuple((x,) for x in X.elements))


def envbm_compose(g: EnvBMMorphism, f: EnvBMMorphism) -> EnvBMMorphism:
    """``g ∘ f``: fiber over ``z`` is the concatenation of ``f``-fibers in ``g``'s order."""
    if f.cod != g.dom:
        raise TypeMismatch(f"cannot compose: {f.cod!r} != {g.dom!r}")
    for m in (f, g):
        if not envbm_validate(m):
            raise TypeMismatch(f"invalid morphism {m!r}")
    fo = dict(zip(f.cod.elements, f.orders))
    images = tuple(g.map[y] for y in f.images)
    orders = tuple(tuple(x for y in o for x in fo[y]) for o in g.orders)
    return EnvBMMorphism(f.dom, g.cod, images, orders)


# -- monoidal structure -----------------------------------------------------

def _tensor_relabel(X: EnvBMObject, Y: EnvBMObject):
    """Partwise union; if any label is shared both sides get ``L.``/``R.`` prefixes."""
    if set(X.elements).isdisjoint(Y.elements):
        rx = {x: x for x in X.elements}
        ry = {y: y for y in Y.elements}
    else:
        rx = {x: f"L.{x}" for x in X.elements}
        ry = {y: f"R.{y}" for y in Y.elements}
    parts = [make_set([rx[x] for x in getattr(X, p).elements] + [ry[y] for y in getattr(Y, p).elements])
             for p in PARTS]
    return EnvBMObject(*parts), rx, ry


def envbm_tensor(a, b):
    """Tensor of two objects or of two morphisms."""
    if isinstance(a, EnvBMObject) and isinstance(b, EnvBMObject):
        return _tensor_relabel(a, b)[0]
    if isinstance(a, EnvBMMorphism) and isinstance(b, EnvBMMorphism):
        dom, dx, dy = _tensor_relabel(a.dom, b.dom)
        cod, cx, cy = _tensor_relabel(a.cod, b.cod)
        mapping = {dx[x]: cx[t] for x, t in a.map.items()}
        mapping.update({dy[x]: cy[t] for x, t in b.map.items()})
        orders = {cx[y]: [dx[x] for x in o] for y, o in zip(a.cod.elements, a.orders)}
        orders.update({cy[y]: [dy[x] for x in o] for y, o in zip(b.cod.elements, b.orders)})
        return envbm_morphism(dom, cod, mapping, orders)
    raise TypeMismatch("envbm_tensor takes two objects or two morphisms")


def envbm_symmetry(X: EnvBMObject, Y: EnvBMObject) -> EnvBMMorphism:
    """The swap ``X ⊗ Y → Y ⊗ X``."""
    XY, ax, ay = _tensor_relabel(X, Y)
    YX, by, bx = _tensor_relabel(Y, X)
    mapping = {ax[x]: bx[x] for x in X.elements}
    mapping.update({ay[y]: by[y] for y in Y.elements})
    inv = {v: k for k, v in mapping.items()}
    return envbm_morphism(XY, YX, mapping, {t: [s] for t, s in inv.items()})


# -- hom-sets ---------------------------------------------------------------

def _fiber_orders(fiber: list, dpart: dict, kind: str) -> list[tuple]:
    if kind != "M":
        return list(itertools.permutations(fiber))
    ls = [x for x in fiber if dpart[x] == "L"]
    ms = [x for x in fiber if dpart[x] == "M"]
    rs = [x for x in fiber if dpart[x] == "R"]
    return [a + tuple(ms) + b for a in itertools.permutations(ls) for b in itertools.permutations(rs)]


def envbm_hom(X: EnvBMObject, Y: EnvBMObject) -> list[EnvBMMorphism]:
    """Every valid morphism ``X → Y`` in a deterministic order."""
    allowed = {
        "L": Y.L.elements + Y.M.elements,
        "M": Y.M.elements,
        "R": Y.R.elements + Y.M.elements,
    }
    dpart, cpart = X.part_of, Y.part_of
    choices = [allowed[dpart[x]] for x in X.elements]
    out = []
    for images in itertools.product(*choices):
        fibers = {y: [] for y in Y.elements}
        for x, y in zip(X.elements, images):
            fibers[y].append(x)
        if any(sum(dpart[x] == "M" for x in fibers[y]) != 1 for y in Y.M.elements):
            continue
        per_fiber = [_fiber_orders(fibers[y], dpart, cpart[y]) for y in Y.elements]
        for orders in itertools.product(*per_fiber):
            out.append(EnvBMMorphism(X, Y, tuple(images), tuple(orders)))
    return out


# -- generators and the closure check ---------------------------------------

def envbm_generators() -> list[EnvBMMorphism]:
    """``{l,m,r}→{m}``, ``∅→{l}``, ``{l0,l1}→{l}``, ``∅→{r}``, ``{r0,r1}→{r}`` on canonical labels."""
    o = canonical_object
    return [
        envbm_morphism(o(1, 1, 1), o(0, 1, 0), {"l0": "m0", "m0": "m0", "r0": "m0"},
                       {"m0": ["l0", "m0", "r0"]}),
        envbm_morphism(o(0, 0, 0), o(1, 0, 0), {}, {}),
        envbm_morphism(o(2, 0, 0), o(1, 0, 0), {"l0": "l0", "l1": "l0"}, {"l0": ["l0", "l1"]}),
        envbm_morphism(o(0, 0, 0), o(0, 0, 1), {}, {}),
        envbm_morphism(o(0, 0, 2), o(0, 0, 1), {"r0": "r0", "r1": "r0"}, {"r0": ["r0", "r1"]}),
    ]


def _elementary_swaps() -> list[EnvBMMorphism]:
    out = []
    for i, p in enumerate(PARTS):
        sizes = [0, 0, 0]
        sizes[i] = 2
        X = canonical_object(*sizes)
        a, b = X.elements
        out.append(envbm_morphism(X, X, {a: b, b: a}, {a: [b], b: [a]}))
    return out


# A canonical object is its size triple; a morphism is (dom, cod, images, orders)
# with elements replaced by their index in dom.elements / cod.elements.

def _to_compact(m: EnvBMMorphism):
    di = {x: i for i, x in enumerate(m.dom.elements)}
    ci = {y: i for i, y in enumerate(m.cod.elements)}
    return (m.dom.sizes(), m.cod.sizes(),
            tuple(ci[y] for y in m.images),
            tuple(tuple(di[x] for x in o) for o in m.orders))


def _from_compact(k) -> EnvBMMorphism:
    X, Y = canonical_object(*k[0]), canonical_object(*k[1])
    return EnvBMMorphism(X, Y, tuple(Y.elements[j] for j in k[2]),
                         tuple(tuple(X.elements[i] for i in o) for o in k[3]))


def _shift_maps(s1, s2):
    """Index maps of two canonical objects into their skeletal tensor."""
    n = tuple(a + b for a, b in zip(s1, s2))
    start = (0, n[0], n[0] + n[1])
    first, second = [], []
    for p in range(3):
        first += [start[p] + i for i in range(s1[p])]
        second += [start[p] + s1[p] + i for i in range(s2[p])]
    return n, first, second


def _compact_tensor(a, b):
    dom, d1, d2 = _shift_maps(a[0], b[0])
    cod, c1, c2 = _shift_maps(a[1], b[1])
    images = [0] * sum(dom)
    for i, j in enumerate(a[2]):
        images[d1[i]] = c1[j]
    for i, j in enumerate(b[2]):
        images[d2[i]] = c2[j]
    orders = [()] * sum(cod)
    for j, o in enumerate(a[3]):
        orders[c1[j]] = tuple(d1[i] for i in o)
    for j, o in enumerate(b[3]):
        orders[c2[j]] = tuple(d2[i] for i in o)
    return dom, cod, tuple(images), tuple(orders)


def _compact_compose(g, f):
    return (f[0], g[1], tuple(g[2][j] for j in f[2]),
            tuple(tuple(i for j in o for i in f[3][j]) for o in g[3]))


def canonical_objects(bound: int) -> list[tuple[int, int, int]]:
    return [(a, b, n - a - b) for n in range(bound + 1) for a in range(n + 1) for b in range(n - a + 1)]


def _tensor_closure(seeds: list, cap: int) -> set:
    found = set(seeds)
    done: dict = {}
    todo = list(seeds)
    while todo:
        k = todo.pop()
        sd, sc = sum(k[0]), sum(k[1])
        done.setdefault((sd, sc), []).append(k)
        for (d, c), bucket in list(done.items()):
            if d + sd > cap or c + sc > cap:
                continue
            for other in list(bucket):
                for t in (_compact_tensor(k, other), _compact_tensor(other, k)):
                    if t not in found:
                        found.add(t)
                        todo.append(t)
    return found


def generation_closure(cap: int) -> set:
    """Compact morphisms reachable from generators, identities and swaps.

    Only objects of total size ``<= cap`` are ever formed.  Tensors are taken
    first; by interchange every composite of tensors is then a chain of such
    tensors, so composing on the left with them reaches everything.
    """
    seeds = envbm_generators() + _elementary_swaps()
    seeds += [envbm_identity(canonical_object(*s)) for s in canonical_objects(cap)]
    layer = _tensor_closure([_to_compact(m) for m in seeds], cap)
    by_dom: dict = {}
    for t in layer:
        by_dom.setdefault(t[0], []).append(t)
    found = set(layer)
    todo = list(layer)
    while todo:
        k = todo.pop()
        for t in by_dom.get(k[1], ()):
            c = _compact_compose(t, k)
            if c not in found:
                found.add(c)
                todo.append(c)
    return found


@dataclass
class GenerationReport:
    bound: int
    closure_size: int
    hom_size: int
    missing: list[EnvBMMorphism]
    spurious: list[EnvBMMorphism]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.spurious

    def __bool__(self):
        return self.ok


def generation_report(size_bound: int) -> GenerationReport:
    """Compare the closure with ``envbm_hom`` on canonical objects of size ``<= size_bound``.

    The closure may pass through objects one larger than the bound: adjoining
    a unit to feed ``{l,m,r}→{m}`` needs that headroom.
    """
    closure = generation_closure(size_bound + 1)
    objs = canonical_objects(size_bound)
    closure = {k for k in closure if sum(k[0]) <= size_bound and sum(k[1]) <= size_bound}
    homs = set()
    for s in objs:
        for t in objs:
            homs.update(_to_compact(m) for m in envbm_hom(canonical_object(*s), canonical_object(*t)))
    missing = sorted(homs - closure)
    spurious = sorted(closure - homs)
    return GenerationReport(size_bound, len(closure), len(homs),
                            [_from_compact(k) for k in missing], [_from_compact(k) for k in spurious])


def envbm_generation_check(size_bound: int) -> bool:
    r = generation_report(size_bound)
    if r.missing:
        raise GenerationGap(f"unreachable morphism {r.missing[0]!r} ({len(r.missing)} in total)")
    if r.spurious:
        raise AssertionError(f"closure produced invalid morphism {r.spurious[0]!r}")
    return True


# -- evaluation into cospans ------------------------------------------------

@dataclass(frozen=True)
class BimoduleData:
    """Target data: algebras ``A``, ``B``, module ``M`` and their action cospans.

    ``unit_a``: ∅ ↛ A, ``mult_a``: A⊔A ↛ A, likewise for ``B``;
    ``act``: (A⊔M)⊔B ↛ M is the two-sided action.
    """

    A: FinSet
    M: FinSet
    B: FinSet
    unit_a: Optional[Cospan] = None
    mult_a: Optional[Cospan] = None
    unit_b: Optional[Cospan] = None
    mult_b: Optional[Cospan] = None
    act: Optional[Cospan] = None

    def need(self, name: str) -> Cospan:
        c = getattr(self, name)
        if c is None:
            raise MissingGeneratorImage(name)
        return c


def canonical_bimodule(A: FinSet) -> BimoduleData:
    """``A`` acting on itself on both sides through the canonical algebra."""
    from .frobenius import canonical_algebra
    alg = canonical_algebra(A)
    act_set, injs = tensor_many([A, A, A])
    act = right_way(make_fn(act_set, A, {i(a): a for i in injs for a in A}))
    return BimoduleData(A, A, A, alg.unit, alg.mult, alg.unit, alg.mult, act)


def _carrier(data: BimoduleData, kind: str) -> FinSet:
    return {"L": data.A, "M": data.M, "R": data.B}[kind]


def evaluate_object(data: BimoduleData, X: EnvBMObject) -> FinSet:
    """``A^⊗X_L ⊗ M^⊗X_M ⊗ B^⊗X_R`` as a left-nested coproduct."""
    return tensor_many([_carrier(data, X.part_of[x]) for x in X.elements])[0]


def _iterated(unit: Cospan, mult: Cospan, n: int, carrier: FinSet) -> Cospan:
    """``carrier^⊗n ↛ carrier`` multiplying left to right (unit when ``n == 0``)."""
    if n == 0:
        return unit
    acc = identity_cospan(carrier)
    for _ in range(n - 1):
        acc = compose_chain(tensor_many_cospans([acc, identity_cospan(carrier)]), mult)
    return acc


def _fiber_cospan(data: BimoduleData, kinds: list[str], target: str) -> Cospan:
    """The operation for one fiber, read in its order."""
    if target == "L":
        return _iterated(data.need("unit_a"), data.need("mult_a"), len(kinds), data.A)
    if target == "R":
        return _iterated(data.need("unit_b"), data.need("mult_b"), len(kinds), data.B)
    nl, nr = kinds.count("L"), kinds.count("R")
    if nl == 0 and nr == 0:
        return identity_cospan(data.M)
    left = _iterated(data.need("unit_a"), data.need("mult_a"), nl, data.A)
    right = _iterated(data.need("unit_b"), data.need("mult_b"), nr, data.B)
    regroup = _regroup_fn([[data.A] * nl, [data.M], [data.B] * nr])
    gathered = tensor_many_cospans([left, identity_cospan(data.M), right])
    return compose_chain(right_way(regroup), gathered, data.need("act"))


def _regroup_fn(groups: list[list[FinSet]]):
    """``S0 ⊔ S1 ⊔ ... → (S0 ⊔ ...) ⊔ (...) ⊔ ...`` bracketed by ``groups``."""
    flat, flat_inj = tensor_many([S for g in groups for S in g])
    inner = [tensor_many(g) for g in groups]
    outer, outer_inj = tensor_many([obj for obj, _ in inner])
    mapping = {}
    k = 0
    for j, (_, injs) in enumerate(inner):
        for inj in injs:
            for e in inj.dom:
                mapping[flat_inj[k](e)] = outer_inj[j](inj(e))
            k += 1
    return make_fn(flat, outer, mapping)


def evaluate_bimodule(data: BimoduleData, m: EnvBMMorphism) -> Cospan:
    """The cospan ``F(X) ↛ F(Y)`` assigned to ``m``.

    First regroup the factors of ``F(X)`` fiber by fiber (a right-way
    bijection), then apply the tensor of per-fiber operations.
    """
    if not envbm_validate(m):
        raise TypeMismatch(f"invalid morphism {m!r}")
    X, Y = m.dom, m.cod
    # X in its own order, then regrouped fiber by fiber
    pos = {x: i for i, x in enumerate(X.elements)}
    flat_order = [x for o in m.orders for x in o]
    src, src_inj = tensor_many([_carrier(data, X.part_of[x]) for x in X.elements])
    grouped = _regroup_fn([[_carrier(data, X.part_of[x]) for x in o] for o in m.orders])
    flat, flat_inj = tensor_many([_carrier(data, X.part_of[x]) for x in flat_order])
    perm = {}
    for k, x in enumerate(flat_order):
        for e in src_inj[pos[x]].dom:
            perm[src_inj[pos[x]](e)] = flat_inj[k](e)
    shuffle = right_way(compose_fn(grouped, make_fn(src, flat, perm)))
    ops = [_fiber_cospan(data, [X.part_of[x] for x in o], Y.part_of[y])
           for y, o in zip(Y.elements, m.orders)]
    return compose_chain(shuffle, tensor_many_cospans(ops))


__all__ = [
    "BimoduleData",
    "EnvBMMorphism",
    "EnvBMObject",
    "GenerationReport",
    "ValidationReport",
    "canonical_bimodule",
    "canonical_object",
    "envbm_compose",
    "envbm_generation_check",
    "envbm_generators",
    "envbm_hom",
    "envbm_identity",
    "envbm_morphism",
    "envbm_object",
    "envbm_symmetry",
    "envbm_tensor",
    "envbm_validate",
    "evaluate_bimodule",
    "evaluate_object",
    "generation_report",
]
