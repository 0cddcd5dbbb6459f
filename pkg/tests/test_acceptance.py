"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL ...`` line. Run directly with
``python3 tests/test_acceptance.py`` for just the summary lines, or through
pytest with the rest of the suite.
"""

from __future__ import annotations

import itertools
import os
import random
import sys
import time

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from generators import (  # noqa: E402
    all_bitstrings,
    decode,
    encode,
    random_args,
    random_b_expr,
    random_c_expr,
)

from polytime import bellantoni as B  # noqa: E402
from polytime import binf as I  # noqa: E402
from polytime import cobham as C  # noqa: E402
from polytime import stdlib  # noqa: E402
from polytime.bitstring import Bitstring  # noqa: E402
from polytime.errors import BoundViolation, InferenceError  # noqa: E402
from polytime.mpoly import MPoly, evaluate, print_canonical  # noqa: E402
from polytime.translate import b_to_c, c_to_b_closed, c_to_b_padded, pol_c_to_b  # noqa: E402

SEED = 20240601


#: summary lines, also echoed at the end of a pytest run by conftest.py
REPORT_LINES = []


def report(number, ok, detail, started):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - started:.1f}s) {detail}"
    REPORT_LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    return ok


def sizes(args):
    return [len(a) for a in args]


def b_defs():
    return [d for d in stdlib.all_defs() if d.cls == "B"]


# ---------------------------------------------------------------- 1


def criterion_1():
    t = time.perf_counter()
    smash_c = print_canonical(C.pol_c(C.Smash()))
    smash_b = print_canonical(pol_c_to_b(C.Smash()))
    ok = smash_c == "x0*x1 + 1" and smash_b == "x0 + 2*x1 + 18"
    return report(1, ok, f"pol_c(smash) = {smash_c!r}, pol_c_to_b(smash) = {smash_b!r}", t)


def test_criterion_1_exact_polynomials():
    assert criterion_1()


# ---------------------------------------------------------------- 2


def criterion_2():
    t = time.perf_counter()
    got = {
        "plus": B.arity_b(B.PLUS),
        "mult": B.arity_b(B.MULT),
        "succ_c": C.arity_c(stdlib.lookup("succ_c").expr),
        "cond": B.arity_b(B.Cond()),
    }
    want = {"plus": (1, 1), "mult": (2, 0), "succ_c": 1, "cond": (0, 4)}
    ok = got == want
    return report(2, ok, ", ".join(f"{k} {v}" for k, v in got.items()), t)


def test_criterion_2_exact_arities():
    assert criterion_2()


# ---------------------------------------------------------------- 3


def criterion_3(exprs=500, inputs=20):
    t = time.perf_counter()
    rng = random.Random(SEED + 3)
    violations = checked_failures = 0
    for _ in range(exprs):
        e = random_c_expr(rng)
        n = C.arity_c(e)
        bound = C.pol_c(e)
        for _ in range(inputs):
            args = random_args(rng, n)
            value = C.eval_c(e, args)
            if len(value) > evaluate(bound, sizes(args)):
                violations += 1
            try:
                if C.eval_c_checked(e, args) != value:
                    checked_failures += 1
            except BoundViolation:
                checked_failures += 1
    ok = violations == 0 and checked_failures == 0
    detail = f"{exprs}x{inputs} runs, {violations} length violations, {checked_failures} checked-run failures"
    return report(3, ok, detail, t)


def test_criterion_3_cobham_length_bound():
    assert criterion_3()


# ---------------------------------------------------------------- 4


def criterion_4(exprs=500, inputs=20):
    t = time.perf_counter()
    rng = random.Random(SEED + 4)
    violations = 0
    for _ in range(exprs):
        e = random_b_expr(rng)
        n, s = B.arity_b(e)
        bound = B.pol_b(e)
        for _ in range(inputs):
            args = random_args(rng, n + s)
            value = B.eval_b(e, args[:n], args[n:])
            limit = evaluate(bound, sizes(args[:n])) + max(sizes(args[n:]), default=0)
            if len(value) > limit:
                violations += 1
    return report(4, violations == 0, f"{exprs}x{inputs} runs, {violations} polymax violations", t)


def test_criterion_4_safe_recursion_polymax_bound():
    assert criterion_4()


# ---------------------------------------------------------------- 5


def criterion_5(inputs=1000):
    t = time.perf_counter()
    rng = random.Random(SEED + 5)
    mismatches = []
    violations = 0
    for d in b_defs():
        n, s = d.expected_arity
        translated = b_to_c(d.expr)
        for _ in range(inputs):
            args = random_args(rng, n + s)
            want = B.eval_b(d.expr, args[:n], args[n:])
            if C.eval_c(translated, args) != want:
                mismatches.append(d.name)
            try:
                C.eval_c_checked(translated, args)
            except BoundViolation:
                violations += 1
    ok = not mismatches and violations == 0
    detail = f"{len(b_defs())} defs x {inputs} inputs, {len(mismatches)} mismatches, {violations} RecBounded violations"
    return report(5, ok, detail, t)


def test_criterion_5_b_to_c_differential():
    assert criterion_5()


# ---------------------------------------------------------------- 6


def unary_targets():
    """Three polynomials for the closed translation of their unary encodings."""
    return [
        MPoly.from_monomials(1, [(3, [])]),
        MPoly.from_monomials(1, [(2, [(0, 1)]), (1, [])]),
        MPoly.from_monomials(2, [(1, [(0, 1), (1, 1)])]),
    ]


def criterion_6(random_inputs=500):
    t = time.perf_counter()
    rng = random.Random(SEED + 6)
    subjects = [
        ("succ_c", stdlib.lookup("succ_c").expr),
        ("pred_c", stdlib.lookup("pred_c").expr),
        ("smash", C.Smash()),
    ] + [(f"poly_to_c({p})", C.poly_to_c(p)) for p in unary_targets()]
    short = all_bitstrings(4)
    closed_bad = padded_bad = runs = 0
    for _, e in subjects:
        n = C.arity_c(e)
        closed = c_to_b_closed(e)
        sim = c_to_b_padded(e)
        cases = [list(a) for a in itertools.product(short, repeat=n)]
        cases += [random_args(rng, n, 8) for _ in range(random_inputs)]
        for args in cases:
            want = C.eval_c(e, args)
            runs += 1
            if B.eval_b(closed, args, ()) != want:
                closed_bad += 1
            threshold = evaluate(sim.bound, sizes(args))
            for extra in (0, 1, 5):
                w = Bitstring("0" * (threshold + extra))
                if B.eval_b(sim.expr, (w,), args) != want:
                    padded_bad += 1
    ok = closed_bad == 0 and padded_bad == 0
    detail = f"{len(subjects)} functions, {runs} inputs, {closed_bad} closed and {padded_bad} padded mismatches"
    return report(6, ok, detail, t)


def test_criterion_6_c_to_b_threshold_and_closed_form():
    assert criterion_6()


# ---------------------------------------------------------------- 7


def random_poly(rng):
    n = rng.randint(1, 3)
    monos = []
    for _ in range(rng.randint(1, 4)):
        degree = rng.randint(0, 3)
        powers = {}
        for _ in range(degree):
            v = rng.randrange(n)
            powers[v] = powers.get(v, 0) + 1
        monos.append((rng.randint(0, 5), sorted(powers.items())))
    return MPoly.from_monomials(n, monos)


def criterion_7(polys=100, inputs=20):
    t = time.perf_counter()
    rng = random.Random(SEED + 7)
    bad = 0
    for _ in range(polys):
        p = random_poly(rng)
        in_c, in_b = C.poly_to_c(p), B.poly_to_b(p)
        for _ in range(inputs):
            args = random_args(rng, p.num_vars)
            want = evaluate(p, sizes(args))
            if len(C.eval_c(in_c, args)) != want or len(B.eval_b(in_b, args)) != want:
                bad += 1
    return report(7, bad == 0, f"{polys} polynomials x {inputs} inputs, {bad} mismatches", t)


def test_criterion_7_unary_encoding():
    assert criterion_7()


# ---------------------------------------------------------------- 8


def criterion_8(exprs=500, inputs=20):
    t = time.perf_counter()
    rng = random.Random(SEED + 8)
    subjects = [d.expr for d in b_defs()] + [random_b_expr(rng) for _ in range(exprs)]
    violations = runs = 0
    for e in subjects:
        n, s = B.arity_b(e)
        bound = B.pol_time(e)
        for _ in range(inputs):
            args = random_args(rng, n + s)
            _, cost = B.eval_b_timed(e, args[:n], args[n:])
            runs += 1
            if cost > evaluate(bound, sizes(args[:n])):
                violations += 1
    return report(8, violations == 0, f"{runs} timed runs, {violations} cost violations", t)


def test_criterion_8_time_bound():
    assert criterion_8()


# ---------------------------------------------------------------- 9


def annotate_top_down(e, n, s):
    """Independent oracle: the only annotation of ``e`` at root arity ``(n, s)``, or None.

    Once the root arity is fixed every subterm arity is forced, so a single
    top-down pass decides existence.
    """
    if isinstance(e, I.Zero):
        return B.Zero() if (n, s) == (0, 0) else None
    if isinstance(e, (I.Succ, I.Pred)):
        if (n, s) != (0, 1):
            return None
        return B.Succ(e.b) if isinstance(e, I.Succ) else B.Pred()
    if isinstance(e, I.Cond):
        return B.Cond() if (n, s) == (0, 4) else None
    if isinstance(e, I.ProjN):
        return B.Proj(e.i, n, s) if e.i < n else None
    if isinstance(e, I.ProjS):
        return B.Proj(n + e.i, n, s) if e.i < s else None
    if isinstance(e, I.Comp):
        parts = [annotate_top_down(e.h, len(e.gN), len(e.gS))]
        parts += [annotate_top_down(g, n, 0) for g in e.gN]
        parts += [annotate_top_down(g, n, s) for g in e.gS]
        if any(p is None for p in parts):
            return None
        k = len(e.gN)
        return B.Comp(n, s, parts[0], tuple(parts[1:1 + k]), tuple(parts[1 + k:]))
    if isinstance(e, I.Rec):
        if n < 1:
            return None
        parts = (annotate_top_down(e.g, n - 1, s), annotate_top_down(e.h0, n, s + 1), annotate_top_down(e.h1, n, s + 1))
        return None if None in parts else B.Rec(*parts)
    raise TypeError(e)


def criterion_9(inputs=50):
    t = time.perf_counter()
    rng = random.Random(SEED + 9)
    problems = []
    for d in b_defs():
        declared = B.arity_b(d.expr)
        bare = I.erase(d.expr)
        inferred = I.infer(bare)
        got = B.arity_b(inferred)
        if got.normal > declared.normal or got.safe > declared.safe:
            problems.append(f"{d.name}: {got} exceeds {declared}")
        if I.erase(inferred) != bare:
            problems.append(f"{d.name}: shape changed")
        if annotate_top_down(bare, *got) != inferred:
            problems.append(f"{d.name}: differs from the top-down annotation")
        for n, s in itertools.product(range(got.normal + 3), range(got.safe + 3)):
            if annotate_top_down(bare, n, s) is not None and (n < got.normal or s < got.safe):
                problems.append(f"{d.name}: ({n}, {s}) is feasible but not above {got}")
        floored = I.infer(bare, tuple(declared))
        if B.arity_b(floored) != declared:
            problems.append(f"{d.name}: floor {declared} gave {B.arity_b(floored)}")
        for _ in range(inputs):
            args = random_args(rng, sum(declared))
            n = declared.normal
            if B.eval_b(floored, args[:n], args[n:]) != B.eval_b(d.expr, args[:n], args[n:]):
                problems.append(f"{d.name}: evaluation differs")
                break
    exact = (B.arity_b(I.infer(I.erase(B.PLUS))), B.arity_b(I.infer(I.erase(B.MULT))))
    if exact != ((1, 1), (2, 0)):
        problems.append(f"plus/mult inferred as {exact}")
    try:
        I.infer(I.Comp(I.Succ(1), (I.ProjN(0),), ()))
        problems.append("unsatisfiable term was annotated")
    except InferenceError:
        pass
    detail = f"{len(b_defs())} defs, plus/mult -> {exact[0]}/{exact[1]}" + (f"; {problems}" if problems else "")
    return report(9, not problems, detail, t)


def test_criterion_9_inference():
    assert criterion_9()


# ---------------------------------------------------------------- 10


def criterion_10():
    t = time.perf_counter()
    succ_c = stdlib.lookup("succ_c").expr
    round_trip = b_to_c(c_to_b_closed(succ_c))
    direct = [k for k in range(256) if decode(C.eval_c(succ_c, [encode(k)])) != k + 1]
    composed = [k for k in range(256) if decode(C.eval_c(round_trip, [encode(k)])) != k + 1]
    ok = not direct and not composed
    detail = f"k in 0..255: {len(direct)} direct and {len(composed)} C->B->C failures"
    return report(10, ok, detail, t)


def test_criterion_10_binary_successor():
    assert criterion_10()


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
