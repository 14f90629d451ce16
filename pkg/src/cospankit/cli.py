"""Batch command line: load named values, run one check, print a JSON report.

Exit status is 0 when the verdict is pass, 1 when it is fail, 2 on usage or
input errors.  Reports are byte-identical across runs unless ``--timing``
asks for wall-clock time.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from .adjoint import (
    CommutingSquare,
    beck_chevalley_cell,
    construct_right_adjoint,
    is_left_adjoint,
    pushout_square,
    search_adjoint,
    verify_adjunction,
)
from .bar import bar_truncation, forgetful_cobase_change_check, pushout_algebra, verify_bar_cocone
from .cospan import find_two_iso, hcompose, is_invertible_cell, mirror, tensor
from .envbm import envbm_compose, envbm_hom, envbm_validate, generation_report
from .errors import CospanError, ParseError, UnknownName
from .finset import FinFn
from .frobenius import (
    canonical_algebra,
    classify_unital_multiplications,
    self_duality,
    transpose_general,
    verify_frobenius,
    verify_rigid,
)
from .serialize import Report, Workspace, _Decoder, dumps, parse_workspace, serialize


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument resolution ----------------------------------------------------

def _value(ws: Workspace, text: str, kind: str, flag: str):
    """A workspace name, or inline JSON for the expected kind."""
    if text in ws:
        data = text
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            raise UnknownName(f"{flag}: {text!r} is neither a bound name nor JSON") from None
    dec = _Decoder(ws.resolve)
    return getattr(dec, kind)(data, flag)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _bijection_failures(f: FinFn) -> list[str]:
    out = []
    for y in f.cod:
        fib = f.fiber(y)
        if len(fib) != 1:
            out.append(f"{y} has preimage {list(fib)}")
    return out


# -- commands ---------------------------------------------------------------
# Each returns (verdict_ok, inputs, witnesses, diagnostics).

def cmd_compose(ws, a):
    c1, c2 = _value(ws, a.left, "cospan", "--left"), _value(ws, a.right, "cospan", "--right")
    return True, {"left": serialize(c1), "right": serialize(c2)}, {"composite": serialize(hcompose(c2, c1))}, []


def cmd_tensor(ws, a):
    c1, c2 = _value(ws, a.left, "cospan", "--left"), _value(ws, a.right, "cospan", "--right")
    return True, {"left": serialize(c1), "right": serialize(c2)}, {"tensor": serialize(tensor(c1, c2))}, []


def cmd_mirror(ws, a):
    c = _value(ws, a.cospan, "cospan", "--cospan")
    return True, {"cospan": serialize(c)}, {"mirror": serialize(mirror(c))}, []


def cmd_check_left_adjoint(ws, a):
    c = _value(ws, a.cospan, "cospan", "--cospan")
    ok = is_left_adjoint(c)
    diag = [] if ok else ["wrong-way leg is not a bijection: " + "; ".join(_bijection_failures(c.right))]
    return ok, {"cospan": serialize(c)}, {}, diag


def cmd_derive_adjoint(ws, a):
    c = _value(ws, a.cospan, "cospan", "--cospan")
    if not is_left_adjoint(c):
        return False, {"cospan": serialize(c)}, {}, ["not a left adjoint: " + "; ".join(_bijection_failures(c.right))]
    w = construct_right_adjoint(c)
    rep = verify_adjunction(w)
    wit = {"adjunction": serialize(w), "left_zigzag": serialize(rep.left_zigzag),
           "right_zigzag": serialize(rep.right_zigzag)}
    return rep.ok, {"cospan": serialize(c)}, wit, rep.diagnostics


def cmd_search_adjoint(ws, a):
    c = _value(ws, a.cospan, "cospan", "--cospan")
    bound = a.apex_bound if a.apex_bound is not None else len(c.src) + len(c.tgt) + 2
    w = search_adjoint(c, bound)
    inputs = {"cospan": serialize(c), "apex_bound": bound}
    if w is None:
        return False, inputs, {}, [f"no right adjoint with apex size <= {bound}"]
    return True, inputs, {"adjunction": serialize(w)}, []


def _square(ws, a) -> CommutingSquare:
    if a.square is not None:
        return _value(ws, a.square, "square", "--square")
    if a.f is None or a.g is None:
        raise UsageError("give --square, or --f and --g to use their pushout square")
    return pushout_square(_value(ws, a.f, "fn", "--f"), _value(ws, a.g, "fn", "--g"))


def cmd_bc_check(ws, a):
    sq = _square(ws, a)
    cell = beck_chevalley_cell(sq)
    ok = is_invertible_cell(cell)
    diag = [] if ok else ["Beck-Chevalley map is not a bijection: " + "; ".join(_bijection_failures(cell.map))]
    return ok, {"square": serialize(sq)}, {"cell": serialize(cell)}, diag


def _span(ws, a):
    if a.f is None or a.g is None:
        raise UsageError("--f and --g are required")
    f, g = _value(ws, a.f, "fn", "--f"), _value(ws, a.g, "fn", "--g")
    return f, g, {"f": serialize(f), "g": serialize(g)}


def cmd_check_frobenius(ws, a):
    A = _value(ws, a.object, "finset", "--object")
    d = verify_frobenius(canonical_algebra(A))
    return True, {"object": serialize(A)}, {"frobenius": serialize(d)}, []


def cmd_check_rigid(ws, a):
    A = _value(ws, a.object, "finset", "--object")
    alg = canonical_algebra(A)
    r = verify_rigid(alg)
    wit = {"algebra": serialize(alg),
           "axioms": {"unit_left_adjoint": r.unit_left_adjoint, "mult_left_adjoint": r.mult_left_adjoint,
                      "projection_invertible": r.projection_invertible}}
    if r.projection is not None:
        wit["projection_formula"] = serialize(r.projection.cell)
    return r.ok, {"object": serialize(A)}, wit, r.notes


def cmd_classify(ws, a):
    A = _value(ws, a.object, "finset", "--object")
    bound = a.apex_bound if a.apex_bound is not None else 3
    sols = classify_unital_multiplications(A, bound)
    wit = {"solutions": [{"mult": serialize(s.mult), "iso_to_fold": serialize(s.iso_to_fold)} for s in sols]}
    diag = ["unital fragment at bounded apex size; higher coherence not checked"]
    if not sols:
        diag.append("no unital multiplication found")
    return bool(sols), {"object": serialize(A), "apex_bound": bound}, wit, diag


def cmd_transpose(ws, a):
    c = _value(ws, a.cospan, "cospan", "--cospan")
    t = transpose_general(c)
    iso = find_two_iso(t, mirror(c))
    wit = {"transpose": serialize(t)}
    if iso is not None:
        wit["iso_to_mirror"] = serialize(iso)
    return iso is not None, {"cospan": serialize(c)}, wit, [] if iso else ["transpose is not the mirror image"]


def cmd_self_duality(ws, a):
    A = _value(ws, a.object, "finset", "--object")
    return True, {"object": serialize(A)}, {"duality": serialize(self_duality(A))}, []


def cmd_envbm_hom(ws, a):
    X = _value(ws, a.dom, "envbm_obj", "--dom")
    Y = _value(ws, a.cod, "envbm_obj", "--cod")
    homs = envbm_hom(X, Y)
    return True, {"dom": serialize(X), "cod": serialize(Y)}, \
        {"count": len(homs), "morphisms": [serialize(m) for m in homs]}, []


def cmd_envbm_compose(ws, a):
    f = _value(ws, a.first, "envbm_mor", "--first")
    g = _value(ws, a.second, "envbm_mor", "--second")
    gf = envbm_compose(g, f)
    rep = envbm_validate(gf)
    return rep.ok, {"first": serialize(f), "second": serialize(g)}, {"composite": serialize(gf)}, rep.violations


def cmd_envbm_generate(ws, a):
    bound = a.bound if a.bound is not None else 3
    r = generation_report(bound)
    diag = [f"unreachable: {m!r}" for m in r.missing] + [f"invalid: {m!r}" for m in r.spurious]
    return r.ok, {"bound": bound}, {"closure_size": r.closure_size, "hom_size": r.hom_size}, diag


def cmd_bar_check(ws, a):
    f, g, inputs = _span(ws, a)
    level = a.level if a.level is not None else 3
    inputs["level"] = level
    t = bar_truncation(f, g, level)
    p = pushout_algebra(f, g)
    cocone = verify_bar_cocone(t, p)
    wit = {"identities": {k: serialize(c) for k, c in sorted(t.witnesses.items())},
           "levels": [serialize(s) for s in t.levels]}
    diag = [f"cocone fails at {x}" for x in cocone.failures]
    if not p.ok:
        diag.append("pushout algebra is not rigid")
    return cocone.ok and p.ok, inputs, wit, diag


def cmd_pushout_algebra(ws, a):
    f, g, inputs = _span(ws, a)
    p = pushout_algebra(f, g)
    wit = {"carrier": serialize(p.carrier), "algebra": serialize(p.algebra),
           "cocone_b": serialize(p.cocone_b), "cocone_c": serialize(p.cocone_c),
           "square": serialize(p.square),
           "algebra_maps": {k: serialize(c) for k, c in sorted(p.algebra_map_witnesses.items())}}
    return p.ok, inputs, wit, p.rigidity.notes


def cmd_forgetful_bc_check(ws, a):
    f, g, inputs = _span(ws, a)
    ok = forgetful_cobase_change_check(f, g)
    cell = beck_chevalley_cell(pushout_square(f, g))
    return ok, inputs, {"cell": serialize(cell)}, [] if ok else ["Beck-Chevalley map is not a bijection"]


def cmd_selftest(ws, a):
    from .checks import DEFAULT_SEED, run_all
    max_size = a.max_size if a.max_size is not None else 3
    seed = a.seed if a.seed is not None else DEFAULT_SEED
    results = run_all(max_size, seed)
    wit = {f"{r.number:02d}": {"name": r.name, "verdict": _verdict(r.ok), "detail": r.detail} for r in results}
    if a.timing:
        for r in results:
            wit[f"{r.number:02d}"]["seconds"] = round(r.seconds, 3)
    diag = [f"criterion {r.number} failed" for r in results if not r.ok]
    return all(r.ok for r in results), {"max_size": max_size, "seed": seed}, wit, diag


COMMANDS: dict[str, tuple[Callable, list[str]]] = {
    "compose": (cmd_compose, ["left", "right"]),
    "tensor": (cmd_tensor, ["left", "right"]),
    "mirror": (cmd_mirror, ["cospan"]),
    "check-left-adjoint": (cmd_check_left_adjoint, ["cospan"]),
    "derive-adjoint": (cmd_derive_adjoint, ["cospan"]),
    "search-adjoint": (cmd_search_adjoint, ["cospan", "apex-bound"]),
    "bc-check": (cmd_bc_check, ["square", "f", "g"]),
    "check-frobenius": (cmd_check_frobenius, ["object"]),
    "check-rigid": (cmd_check_rigid, ["object"]),
    "classify": (cmd_classify, ["object", "apex-bound"]),
    "transpose": (cmd_transpose, ["cospan"]),
    "self-duality": (cmd_self_duality, ["object"]),
    "envbm-hom": (cmd_envbm_hom, ["dom", "cod"]),
    "envbm-compose": (cmd_envbm_compose, ["first", "second"]),
    "envbm-generate": (cmd_envbm_generate, ["bound"]),
    "bar-check": (cmd_bar_check, ["f", "g", "level"]),
    "pushout-algebra": (cmd_pushout_algebra, ["f", "g"]),
    "forgetful-bc-check": (cmd_forgetful_bc_check, ["f", "g"]),
    "selftest": (cmd_selftest, ["max-size", "seed"]),
}

_INT_FLAGS = {"apex-bound", "bound", "level", "max-size", "seed"}
_OPTIONAL = {"apex-bound", "bound", "level", "max-size", "seed", "square", "f", "g"}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cospankit", description="Checks for cospans of finite sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, flags) in COMMANDS.items():
        sp = sub.add_parser(name)
        sp.add_argument("inputs", nargs="*", help="JSON files of named bindings")
        for flag in flags:
            kw = {"type": int} if flag in _INT_FLAGS else {}
            sp.add_argument(f"--{flag}", required=flag not in _OPTIONAL, **kw)
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    return p


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return dumps(serialize(report))
    lines = [f"{report.command}: {report.verdict}"]
    lines += [f"  {d}" for d in report.diagnostics]
    if report.timing is not None:
        lines.append(f"  time {report.timing:.3f}s")
    return "\n".join(lines) + "\n"


def run(argv) -> tuple[int, str, str]:
    """Execute one command; returns ``(exit_code, stdout_text, stderr_text)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return 2, "", f"{e}\n"
    start = time.perf_counter()
    try:
        ws = parse_workspace(args.inputs)
        fn = COMMANDS[args.command][0]
        ok, inputs, witnesses, diagnostics = fn(ws, args)
    except UsageError as e:
        return 2, "", f"{args.command}: {e}\n"
    except (ParseError, UnknownName, OSError) as e:
        return 2, "", f"{args.command}: input error: {e}\n"
    except CospanError as e:
        return 2, "", f"{args.command}: {type(e).__name__}: {e}\n"
    timing = round(time.perf_counter() - start, 6) if args.timing else None
    report = Report(args.command, inputs, _verdict(ok), witnesses, list(diagnostics), timing)
    text = render(report, args.format)
    code = 0 if ok else 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return code, "", ""
    return code, text, ""


def main(argv=None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
