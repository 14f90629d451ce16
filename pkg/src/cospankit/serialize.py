"""JSON encoding of every value type, plus workspaces of named bindings.

A record is a one-key object whose key names its kind, e.g.
``{"set": {"elements": ["a", "b"]}}``.  Inside a record, sets may also be
written as bare lists, function legs as bare ``{x: y}`` maps, and any
record as a string naming a workspace binding.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from .adjoint import AdjunctionWitness, CommutingSquare
from .bar import BarComplexTruncation, bar_truncation
from .cospan import Cospan, TwoCell
from .envbm import EnvBMMorphism, EnvBMObject, envbm_object
from .errors import CospanError, ParseError, UnknownName
from .finset import FinFn, FinSet, make_fn, make_set
from .frobenius import AlgebraDatum, DualityData, FrobeniusDatum


def dumps(value) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class Report:
    command: str
    inputs: dict
    verdict: str
    witnesses: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    timing: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


# -- encoding ---------------------------------------------------------------

def _set(s: FinSet) -> list:
    return list(s.elements)


def _map(f: FinFn) -> dict:
    return dict(f.mapping)


def _cospan_body(c: Cospan) -> dict:
    return {"src": _set(c.src), "tgt": _set(c.tgt), "apex": _set(c.apex),
            "left": _map(c.left), "right": _map(c.right)}


def serialize(v) -> dict:
    """The JSON-ready record for ``v``."""
    if isinstance(v, FinSet):
        return {"set": {"elements": _set(v)}}
    if isinstance(v, FinFn):
        return {"fn": {"dom": _set(v.dom), "cod": _set(v.cod), "map": _map(v)}}
    if isinstance(v, Cospan):
        return {"cospan": _cospan_body(v)}
    if isinstance(v, TwoCell):
        return {"cell": {"from": serialize(v.source), "to": serialize(v.target), "map": _map(v.map)}}
    if isinstance(v, AdjunctionWitness):
        return {"adjunction": {k: serialize(getattr(v, k)) for k in ("left", "right", "unit", "counit")}}
    if isinstance(v, CommutingSquare):
        return {"square": {k: serialize(getattr(v, k)) for k in ("f", "g", "g2", "f2")}}
    if isinstance(v, AlgebraDatum):
        return {"algebra": {"carrier": _set(v.carrier), "unit": serialize(v.unit), "mult": serialize(v.mult),
                            "witnesses": {k: serialize(c) for k, c in v.witnesses}}}
    if isinstance(v, FrobeniusDatum):
        return {"frobenius": {"algebra": serialize(v.algebra), "counit": serialize(v.counit),
                              "comult": serialize(v.comult),
                              "left_counitality": serialize(v.left_counitality),
                              "right_counitality": serialize(v.right_counitality)}}
    if isinstance(v, DualityData):
        return {"duality": {"obj": _set(v.obj), "dual": _set(v.dual), "ev": serialize(v.ev),
                            "coev": serialize(v.coev), "zigzag_obj": serialize(v.zigzag_obj),
                            "zigzag_dual": serialize(v.zigzag_dual)}}
    if isinstance(v, EnvBMObject):
        return {"envbm_obj": {"L": _set(v.L), "M": _set(v.M), "R": _set(v.R)}}
    if isinstance(v, EnvBMMorphism):
        return {"envbm_mor": {"dom": serialize(v.dom), "cod": serialize(v.cod), "map": dict(v.map),
                              "orders": {y: list(o) for y, o in zip(v.cod.elements, v.orders)}}}
    if isinstance(v, BarComplexTruncation):
        return {"bar": {
            "f": serialize(v.f), "g": serialize(v.g), "n": v.n,
            "levels": [_set(s) for s in v.levels],
            "faces": {f"{k},{i}": serialize(c) for (k, i), c in v.faces.items()},
            "degeneracies": {f"{k},{j}": serialize(c) for (k, j), c in v.degeneracies.items()},
            "witnesses": {name: serialize(c) for name, c in v.witnesses.items()},
        }}
    if isinstance(v, Report):
        body = {"command": v.command, "inputs": v.inputs, "verdict": v.verdict,
                "witnesses": v.witnesses, "diagnostics": v.diagnostics}
        if v.timing is not None:
            body["timing"] = v.timing
        return {"report": body}
    raise TypeError(f"cannot serialize {type(v).__name__}")


# -- decoding ---------------------------------------------------------------

Resolver = Callable[[str, str], Any]


def _no_names(name: str, path: str):
    raise UnknownName(f"{path}: no workspace to resolve {name!r}")


class _Decoder:
    def __init__(self, resolve: Resolver = _no_names):
        self.resolve = resolve

    # helpers
    def body(self, v, kind: str, path: str):
        if isinstance(v, dict) and set(v) == {kind}:
            return v[kind], f"{path}.{kind}"
        raise ParseError(f"{path}: expected a {kind!r} record")

    def field(self, body, key: str, path: str):
        if not isinstance(body, dict):
            raise ParseError(f"{path}: expected an object")
        if key not in body:
            raise ParseError(f"{path}.{key}: missing")
        return body[key]

    def labels(self, v, path: str) -> list:
        if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
            raise ParseError(f"{path}: expected a list of string labels")
        return v

    def finset(self, v, path: str) -> FinSet:
        if isinstance(v, str):
            got = self.resolve(v, path)
            if not isinstance(got, FinSet):
                raise ParseError(f"{path}: {v!r} is not a set")
            return got
        if isinstance(v, dict):
            if "set" in v:
                v, path = self.body(v, "set", path)
            v, path = self.field(v, "elements", path), f"{path}.elements"
        try:
            return make_set(self.labels(v, path))
        except CospanError as e:
            raise ParseError(f"{path}: {e}") from None

    def mapping(self, v, dom: FinSet, cod: FinSet, path: str) -> FinFn:
        if not isinstance(v, dict) or not all(isinstance(y, str) for y in v.values()):
            raise ParseError(f"{path}: expected a label-to-label map")
        try:
            return make_fn(dom, cod, v)
        except (CospanError, KeyError) as e:
            raise ParseError(f"{path}: {e}") from None

    def named(self, v, cls, path):
        got = self.resolve(v, path)
        if not isinstance(got, cls):
            raise ParseError(f"{path}: {v!r} is not a {cls.__name__}")
        return got

    # types
    def fn(self, v, path: str) -> FinFn:
        if isinstance(v, str):
            return self.named(v, FinFn, path)
        b, p = self.body(v, "fn", path)
        dom = self.finset(self.field(b, "dom", p), f"{p}.dom")
        cod = self.finset(self.field(b, "cod", p), f"{p}.cod")
        return self.mapping(self.field(b, "map", p), dom, cod, f"{p}.map")

    def cospan(self, v, path: str) -> Cospan:
        if isinstance(v, str):
            return self.named(v, Cospan, path)
        b, p = self.body(v, "cospan", path)
        src, tgt, apex = (self.finset(self.field(b, k, p), f"{p}.{k}") for k in ("src", "tgt", "apex"))
        left = self.leg(self.field(b, "left", p), src, apex, f"{p}.left")
        right = self.leg(self.field(b, "right", p), tgt, apex, f"{p}.right")
        return self.guard(lambda: Cospan(src, tgt, apex, left, right), p)

    def leg(self, v, dom, cod, path) -> FinFn:
        if isinstance(v, str) or (isinstance(v, dict) and set(v) == {"fn"}):
            f = self.fn(v, path)
            if (f.dom, f.cod) != (dom, cod):
                raise ParseError(f"{path}: leg has the wrong boundary")
            return f
        return self.mapping(v, dom, cod, path)

    def guard(self, build, path):
        try:
            return build()
        except CospanError as e:
            raise ParseError(f"{path}: {e}") from None

    def cell(self, v, path: str) -> TwoCell:
        if isinstance(v, str):
            return self.named(v, TwoCell, path)
        b, p = self.body(v, "cell", path)
        src = self.cospan(self.field(b, "from", p), f"{p}.from")
        tgt = self.cospan(self.field(b, "to", p), f"{p}.to")
        m = self.mapping(self.field(b, "map", p), src.apex, tgt.apex, f"{p}.map")
        return self.guard(lambda: TwoCell(src, tgt, m), p)

    def adjunction(self, v, path):
        b, p = self.body(v, "adjunction", path)
        return AdjunctionWitness(self.cospan(self.field(b, "left", p), f"{p}.left"),
                                 self.cospan(self.field(b, "right", p), f"{p}.right"),
                                 self.cell(self.field(b, "unit", p), f"{p}.unit"),
                                 self.cell(self.field(b, "counit", p), f"{p}.counit"))

    def square(self, v, path):
        b, p = self.body(v, "square", path)
        fs = [self.fn(self.field(b, k, p), f"{p}.{k}") for k in ("f", "g", "g2", "f2")]
        return self.guard(lambda: CommutingSquare(*fs), p)

    def algebra(self, v, path) -> AlgebraDatum:
        if isinstance(v, str):
            return self.named(v, AlgebraDatum, path)
        b, p = self.body(v, "algebra", path)
        carrier = self.finset(self.field(b, "carrier", p), f"{p}.carrier")
        wits = b.get("witnesses", {})
        if not isinstance(wits, dict):
            raise ParseError(f"{p}.witnesses: expected an object")
        return AlgebraDatum(carrier,
                            self.cospan(self.field(b, "unit", p), f"{p}.unit"),
                            self.cospan(self.field(b, "mult", p), f"{p}.mult"),
                            tuple(sorted((k, self.cell(c, f"{p}.witnesses.{k}")) for k, c in wits.items())))

    def frobenius(self, v, path):
        b, p = self.body(v, "frobenius", path)
        return FrobeniusDatum(self.algebra(self.field(b, "algebra", p), f"{p}.algebra"),
                              self.cospan(self.field(b, "counit", p), f"{p}.counit"),
                              self.cospan(self.field(b, "comult", p), f"{p}.comult"),
                              self.cell(self.field(b, "left_counitality", p), f"{p}.left_counitality"),
                              self.cell(self.field(b, "right_counitality", p), f"{p}.right_counitality"))

    def duality(self, v, path):
        b, p = self.body(v, "duality", path)
        return DualityData(self.finset(self.field(b, "obj", p), f"{p}.obj"),
                           self.finset(self.field(b, "dual", p), f"{p}.dual"),
                           self.cospan(self.field(b, "ev", p), f"{p}.ev"),
                           self.cospan(self.field(b, "coev", p), f"{p}.coev"),
                           self.cell(self.field(b, "zigzag_obj", p), f"{p}.zigzag_obj"),
                           self.cell(self.field(b, "zigzag_dual", p), f"{p}.zigzag_dual"))

    def envbm_obj(self, v, path) -> EnvBMObject:
        if isinstance(v, str):
            return self.named(v, EnvBMObject, path)
        b, p = self.body(v, "envbm_obj", path)
        if not isinstance(b, dict) or set(b) - {"L", "M", "R"}:
            raise ParseError(f"{p}: expected only keys L, M, R")
        parts = {k: self.labels(b.get(k, []), f"{p}.{k}") for k in ("L", "M", "R")}
        return self.guard(lambda: envbm_object(**parts), p)

    def envbm_mor(self, v, path) -> EnvBMMorphism:
        if isinstance(v, str):
            return self.named(v, EnvBMMorphism, path)
        b, p = self.body(v, "envbm_mor", path)
        dom = self.envbm_obj(self.field(b, "dom", p), f"{p}.dom")
        cod = self.envbm_obj(self.field(b, "cod", p), f"{p}.cod")
        m = self.field(b, "map", p)
        if not isinstance(m, dict) or set(m) != set(dom.elements):
            raise ParseError(f"{p}.map: must map exactly the domain labels")
        for x, y in m.items():
            if y not in cod.part_of:
                raise ParseError(f"{p}.map.{x}: {y!r} is not in the codomain")
        orders = self.field(b, "orders", p)
        if not isinstance(orders, dict):
            raise ParseError(f"{p}.orders: expected an object")
        for y in orders:
            if y not in cod.part_of:
                raise ParseError(f"{p}.orders.{y}: not a codomain label")
        out = {}
        for y in cod.elements:
            o = orders.get(y, [])
            fiber = sorted(x for x, t in m.items() if t == y)
            if not isinstance(o, list) or sorted(o) != fiber:
                raise ParseError(f"{p}.orders.{y}: must list the fiber {fiber} exactly once each")
            out[y] = o
        return EnvBMMorphism(dom, cod, tuple(m[x] for x in dom.elements),
                             tuple(tuple(out[y]) for y in cod.elements))

    def bar(self, v, path) -> BarComplexTruncation:
        b, p = self.body(v, "bar", path)
        f = self.fn(self.field(b, "f", p), f"{p}.f")
        g = self.fn(self.field(b, "g", p), f"{p}.g")
        n = self.field(b, "n", p)
        if not isinstance(n, int) or n < 0:
            raise ParseError(f"{p}.n: expected a natural number")
        t = self.guard(lambda: bar_truncation(f, g, n), p)
        for key in ("levels", "faces", "degeneracies", "witnesses"):
            if key in b and serialize(t)["bar"][key] != b[key]:
                raise ParseError(f"{p}.{key}: does not match the complex built from f, g, n")
        return t

    def report(self, v, path) -> Report:
        b, p = self.body(v, "report", path)
        verdict = self.field(b, "verdict", p)
        if verdict not in ("pass", "fail"):
            raise ParseError(f"{p}.verdict: must be 'pass' or 'fail'")
        return Report(self.field(b, "command", p), self.field(b, "inputs", p), verdict,
                      b.get("witnesses", {}), b.get("diagnostics", []), b.get("timing"))

    def any(self, v, path: str = "$"):
        if isinstance(v, str):
            return self.resolve(v, path)
        if isinstance(v, list):
            return self.finset(v, path)
        if not isinstance(v, dict) or len(v) != 1:
            raise ParseError(f"{path}: expected a one-key record")
        kind = next(iter(v))
        method = {
            "set": self.finset, "fn": self.fn, "cospan": self.cospan, "cell": self.cell,
            "adjunction": self.adjunction, "square": self.square, "algebra": self.algebra,
            "frobenius": self.frobenius, "duality": self.duality, "envbm_obj": self.envbm_obj,
            "envbm_mor": self.envbm_mor, "bar": self.bar, "report": self.report,
        }.get(kind)
        if method is None:
            raise ParseError(f"{path}: unknown kind {kind!r}")
        return method(v, path)


def deserialize(v, resolve: Optional[Resolver] = None):
    return _Decoder(resolve or _no_names).any(v)


def loads(text: str, resolve: Optional[Resolver] = None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return deserialize(data, resolve)


def round_trip(v):
    return loads(dumps(serialize(v)))


# -- workspaces -------------------------------------------------------------

class Workspace:
    """Named bindings from one or more files; names are resolved lazily."""

    def __init__(self):
        self.raw: dict[str, tuple[Any, str]] = {}
        self.values: dict[str, Any] = {}
        self._busy: set[str] = set()

    def add_raw(self, name: str, data, origin: str):
        if name in self.raw:
            raise ParseError(f"{origin}: name {name!r} already bound in {self.raw[name][1]}")
        self.raw[name] = (data, origin)

    def bind(self, name: str, value):
        if name in self.raw or name in self.values:
            raise ParseError(f"name {name!r} already bound")
        self.values[name] = value

    def names(self) -> list[str]:
        return sorted(set(self.raw) | set(self.values))

    def __contains__(self, name):
        return name in self.raw or name in self.values

    def __getitem__(self, name: str):
        return self.resolve(name, "$")

    def resolve(self, name: str, path: str):
        if name in self.values:
            return self.values[name]
        if name not in self.raw:
            raise UnknownName(f"{path}: unknown name {name!r}")
        if name in self._busy:
            raise ParseError(f"{path}: {name!r} refers to itself")
        data, origin = self.raw[name]
        self._busy.add(name)
        try:
            value = _Decoder(self.resolve).any(data, f"{origin}:{name}")
        finally:
            self._busy.discard(name)
        self.values[name] = value
        return value

    def check(self):
        """Resolve every binding so bad references surface up front."""
        for name in self.names():
            self[name]


def parse_workspace(files) -> Workspace:
    ws = Workspace()
    for f in files:
        path = Path(f)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
        if not isinstance(data, dict):
            raise ParseError(f"{path}: top level must map names to records")
        for name, v in data.items():
            ws.add_raw(name, v, str(path))
    ws.check()
    return ws
