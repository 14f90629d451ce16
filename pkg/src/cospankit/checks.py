"""The acceptance suite as plain functions, shared by ``selftest`` and the tests.

Every check takes ``max_size`` (the base tier, 3 by default) and a seed for
its random tier, and returns a :class:`CheckResult`.  Size tiers scale with
``max_size``: a "size 4" tier becomes ``max_size + 1`` and so on.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .adjoint import (
    beck_chevalley_cell,
    construct_right_adjoint,
    is_left_adjoint,
    pushout_square,
    search_adjoint,
    verify_cobase_change,
)
from .bar import (
    bar_truncation,
    forgetful_cobase_change_check,
    padded_square,
    pushout_algebra,
    verify_bar_cocone,
)
from .cospan import (
    Cospan,
    enumerate_cells,
    enumerate_cospans,
    is_invertible_cell,
    is_two_isomorphic,
    mirror,
    right_way,
)
from .envbm import (
    EnvBMMorphism,
    EnvBMObject,
    canonical_object,
    canonical_objects,
    envbm_generators,
    envbm_hom,
    envbm_validate,
    generation_report,
)
from .errors import ClassificationCounterexample, CounitalityFailed
from .finset import canonical_set, enumerate_functions
from .frobenius import (
    canonical_algebra,
    classify_unital_multiplications,
    rigidity_square,
    self_duality,
    transpose_general,
    verify_adjoint_to_transpose,
    verify_frobenius,
    verify_rigid,
)
from .rng import Lcg

DEFAULT_SEED = 20240601


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:>2} {self.name}: {self.detail}"


def _sets(max_size: int, prefix: str):
    return [canonical_set(n, prefix) for n in range(max_size + 1)]


def small_cospans(max_size: int):
    """All cospans with source, target and apex of size ``<= max_size``, up to relabeling."""
    for A in _sets(max_size, "a"):
        for B in _sets(max_size, "b"):
            yield from enumerate_cospans(A, B, max_size)


def random_cospan(rng: Lcg, max_size: int) -> Cospan:
    A, B = rng.finset(max_size, "a"), rng.finset(max_size, "b")
    X = rng.finset(max_size, "x", min_size=1 if len(A) + len(B) else 0)
    return Cospan(A, B, X, rng.function(A, X), rng.function(B, X))


def random_span(rng: Lcg, max_size: int):
    """``f: A → B``, ``g: A → C`` with sizes ``<= max_size``."""
    A = rng.finset(max_size, "a")
    lo = 1 if len(A) else 0
    B, C = rng.finset(max_size, "b", lo), rng.finset(max_size, "c", lo)
    return rng.function(A, B), rng.function(A, C)


# -- criteria ---------------------------------------------------------------

def check_left_adjoints(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    bound = 2 * max_size
    total = lefts = 0
    disagree = []
    for c in small_cospans(max_size):
        total += 1
        claimed = is_left_adjoint(c)
        found = search_adjoint(c, bound) is not None
        lefts += claimed
        if claimed != found:
            disagree.append(repr(c))
    return CheckResult(1, "left adjoints are the cospans with invertible wrong-way leg", not disagree,
                       {"cospans": total, "left_adjoints": lefts, "apex_bound": bound,
                        "disagreements": disagree[:3]})


def check_canonical_rigidity(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    bad = []
    for A in _sets(max_size + 1, "a"):
        r = verify_rigid(canonical_algebra(A))
        if not r:
            bad.append(len(A))
    return CheckResult(2, "canonical algebras are rigid", not bad,
                       {"max_carrier": max_size + 1, "failures": bad})


def check_frobenius(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    bad = []
    for A in _sets(max_size + 1, "a"):
        try:
            verify_frobenius(canonical_algebra(A))
            self_duality(A)
        except (CounitalityFailed, AssertionError) as e:
            bad.append(f"|A|={len(A)}: {e}")
    return CheckResult(3, "Frobenius counitality and self-duality", not bad,
                       {"max_carrier": max_size + 1, "failures": bad})


def check_transpose(max_size: int = 3, seed: int = DEFAULT_SEED, samples: int = 200) -> CheckResult:
    exhaustive = 0
    bad = []
    for c in small_cospans(max_size):
        exhaustive += 1
        if not is_two_isomorphic(transpose_general(c), mirror(c)):
            bad.append(repr(c))
    rng = Lcg(seed)
    for _ in range(samples):
        c = random_cospan(rng, max_size + 2)
        if not is_two_isomorphic(transpose_general(c), mirror(c)):
            bad.append(repr(c))
    return CheckResult(4, "transpose is the mirror image", not bad,
                       {"exhaustive": exhaustive, "random": samples, "random_max_size": max_size + 2,
                        "failures": bad[:3]})


def check_adjoint_to_transpose(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    total = 0
    bad = []
    for A in _sets(max_size, "a"):
        for B in _sets(max_size, "b"):
            for f in enumerate_functions(A, B):
                total += 1
                if not verify_adjoint_to_transpose(f):
                    bad.append(repr(f))
    return CheckResult(5, "right-way maps are left adjoint to their transpose", not bad,
                       {"functions": total, "failures": bad[:3]})


def check_classification(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    counts = {}
    bad = []
    for A in _sets(max(max_size - 1, 0), "a"):
        try:
            sols = classify_unital_multiplications(A, max_size)
        except ClassificationCounterexample as e:
            bad.append(str(e))
            continue
        counts[len(A)] = len(sols)
        if not sols:
            bad.append(f"|A|={len(A)}: no unital multiplication")
    return CheckResult(6, "unital multiplications are the fold", not bad,
                       {"apex_bound": max_size, "solutions_by_size": counts, "failures": bad,
                        "note": "unital fragment only; higher coherence is not checked"})


def check_cell_invertibility(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    """Cells between left-adjoint cospans (2-isomorphic to right-way maps) are bijections."""
    cells = 0
    bad = []
    for A in _sets(max_size, "a"):
        for B in _sets(max_size, "b"):
            lefts = [c for c in enumerate_cospans(A, B, max_size) if is_left_adjoint(c)]
            lefts += [right_way(f) for f in enumerate_functions(A, B)]
            for c, d in itertools.product(lefts, repeat=2):
                for cell in enumerate_cells(c, d):
                    cells += 1
                    if not is_invertible_cell(cell):
                        bad.append(repr(cell))
    return CheckResult(7, "2-cells between right-way cospans are invertible", not bad,
                       {"cells": cells, "failures": bad[:3]})


def envbm_hom_bruteforce(X: EnvBMObject, Y: EnvBMObject) -> list[EnvBMMorphism]:
    """Every function with every fiber ordering, filtered by validation."""
    out = []
    for images in itertools.product(Y.elements, repeat=len(X)):
        fibers = [[x for x, t in zip(X.elements, images) if t == y] for y in Y.elements]
        for orders in itertools.product(*[itertools.permutations(f) for f in fibers]):
            m = EnvBMMorphism(X, Y, tuple(images), tuple(orders))
            if envbm_validate(m):
                out.append(m)
    return out


def check_envbm(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    mismatched = []
    pairs = 0
    objs = [canonical_object(*s) for s in canonical_objects(max_size)]
    for X in objs:
        for Y in objs:
            pairs += 1
            fast, slow = envbm_hom(X, Y), envbm_hom_bruteforce(X, Y)
            if len(fast) != len(slow) or set(fast) != set(slow):
                mismatched.append(f"{X!r}->{Y!r}: {len(fast)} vs {len(slow)}")
    gen = generation_report(max_size)
    return CheckResult(8, "envelope hom-sets and five-generator closure", not mismatched and gen.ok,
                       {"object_pairs": pairs, "hom_mismatches": mismatched[:3],
                        "morphisms": gen.hom_size, "closure": gen.closure_size,
                        "unreachable": [repr(m) for m in gen.missing[:3]]})


def check_beck_chevalley(max_size: int = 3, seed: int = DEFAULT_SEED, samples: int = 100) -> CheckResult:
    rng = Lcg(seed)
    bad = []
    for n in range(samples):
        f, g = random_span(rng, max_size + 1)
        if not verify_cobase_change(pushout_square(f, g)):
            bad.append(f"square {n}: cell not invertible")
        if verify_cobase_change(padded_square(f, g)):
            bad.append(f"square {n}: padded control invertible")
        if not forgetful_cobase_change_check(f, g):
            bad.append(f"square {n}: forgetful check failed")
    fold_sizes = list(range(1, max_size + 1))
    for k in fold_sizes:
        sq = rigidity_square(canonical_set(k, "a"))
        if not is_invertible_cell(beck_chevalley_cell(sq)):
            bad.append(f"fold square |A|={k} fails")
        if not forgetful_cobase_change_check(sq.f, sq.g):
            bad.append(f"fold square |A|={k}: forgetful check failed")
    return CheckResult(9, "Beck-Chevalley cells of pushout squares", not bad,
                       {"squares": samples, "max_size": max_size + 1, "fold_square_sizes": fold_sizes,
                        "failures": bad[:3]})


def check_bar(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    small = max(max_size - 1, 0)
    spans = identities = 0
    bad = []
    for A in _sets(small, "a"):
        for B in _sets(small, "b"):
            for C in _sets(small, "c"):
                for f in enumerate_functions(A, B):
                    for g in enumerate_functions(A, C):
                        spans += 1
                        try:
                            t = bar_truncation(f, g, max_size)
                        except Exception as e:  # reported, not raised
                            bad.append(f"{f!r},{g!r}: {e!r}")
                            continue
                        identities += len(t.witnesses)
                        p = pushout_algebra(f, g)
                        if not p.ok:
                            bad.append(f"{f!r},{g!r}: pushout algebra not rigid")
                        if not verify_bar_cocone(t, p):
                            bad.append(f"{f!r},{g!r}: cocone does not commute")
    return CheckResult(10, "bar complex identities, rigid pushouts and cocones", not bad,
                       {"spans": spans, "level": max_size, "identities_checked": identities,
                        "failures": bad[:3]})


def check_infrastructure(max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    from .cli import run
    from .serialize import Report, round_trip

    A = canonical_set(2, "a")
    alg = canonical_algebra(A)
    rng = Lcg(seed)
    c = random_cospan(rng, 5)
    f, g = random_span(rng, 2)
    samples = [
        A, alg.mult.left, c, alg.witness("assoc"), construct_right_adjoint(alg.mult), pushout_square(f, g), alg,
        verify_frobenius(alg), self_duality(A), canonical_object(1, 1, 1), envbm_generators()[0],
        bar_truncation(f, g, 2), Report("demo", {"x": 1}, "pass", {}, ["note"]),
    ]
    bad = [type(v).__name__ for v in samples if round_trip(v) != v]
    runs = [
        ["check-rigid", "--object", '["a0","a1"]'],
        ["envbm-hom", "--dom", '{"envbm_obj":{"L":["l"],"M":["m"],"R":["r"]}}',
         "--cod", '{"envbm_obj":{"M":["m"]}}'],
    ]
    nondeterministic = []
    for argv in runs:
        outs = [run(argv)[1] for _ in range(2)]
        if outs[0] != outs[1]:
            nondeterministic.append(argv[0])
    return CheckResult(11, "serialization round-trips and deterministic reports", not bad and not nondeterministic,
                       {"types": len(samples), "round_trip_failures": bad,
                        "nondeterministic": nondeterministic})


CHECKS = [
    check_left_adjoints,
    check_canonical_rigidity,
    check_frobenius,
    check_transpose,
    check_adjoint_to_transpose,
    check_classification,
    check_cell_invertibility,
    check_envbm,
    check_beck_chevalley,
    check_bar,
    check_infrastructure,
]


def run_check(fn, max_size: int = 3, seed: int = DEFAULT_SEED) -> CheckResult:
    t = time.perf_counter()
    r = fn(max_size=max_size, seed=seed)
    r.seconds = time.perf_counter() - t
    return r


def run_all(max_size: int = 3, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [run_check(fn, max_size, seed) for fn in CHECKS]
