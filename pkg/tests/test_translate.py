import itertools
import random

import pytest

from generators import all_bitstrings, random_args
from polytime import bellantoni as B
from polytime import cobham as C
from polytime import stdlib
from polytime.bitstring import Bitstring, render_literal
from polytime.mpoly import MPoly, evaluate, print_canonical
from polytime.translate import (
    ONE,
    P,
    SMASH_B,
    Y,
    b_dummies,
    b_to_c,
    c_dummies,
    c_to_b_closed,
    c_to_b_padded,
    move_arg,
    padding_function,
    pol_c_to_b,
)

SUCC = stdlib.lookup("succ_c").expr
PRED_C = stdlib.lookup("pred_c").expr


def pad(n):
    return Bitstring("0" * n)


# ---------------------------------------------------------------- B -> C


def test_c_dummies():
    e = C.Smash()
    assert c_dummies(0, e) is e
    assert C.arity_c(c_dummies(2, C.O())) == 2
    assert C.eval_c(c_dummies(2, C.O()), ["1", "0"]) == Bitstring("")
    assert render_literal(C.eval_c(c_dummies(1, e), ["1", "1", "111"])) == "10"


def test_move_arg():
    e = C.Proj(3, 4)
    moved = move_arg(e, 2)
    # slot 3 of the moved term reads the recursive value, passed second
    assert C.eval_c(moved, ["0", "1", "00", "01"]) == C.eval_c(C.Proj(1, 4), ["0", "1", "00", "01"])
    assert move_arg(e, 0) is e


def test_pred_translates_to_a_single_rec():
    assert b_to_c(B.Pred()) == C.Rec(C.O(), C.Proj(0, 2), C.Proj(0, 2), C.Proj(0, 1))


def test_cond_and_plus():
    cond = b_to_c(B.Cond())
    assert render_literal(C.eval_c(cond, ["eps", "1", "0", "11"])) == "1"
    assert render_literal(C.eval_c(cond, ["10", "1", "0", "11"])) == "0"
    assert render_literal(C.eval_c_checked(cond, ["01", "1", "0", "11"])) == "11"
    assert render_literal(C.eval_c(b_to_c(B.PLUS), ["11", "0"])) == "011"


@pytest.mark.parametrize("d", [d for d in stdlib.all_defs() if d.cls == "B"], ids=lambda d: d.name)
def test_b_to_c_agrees_and_is_bounded(d):
    rng = random.Random(d.name)
    n, s = d.expected_arity
    e = b_to_c(d.expr)
    assert C.arity_c(e) == n + s
    for _ in range(40):
        args = random_args(rng, n + s, 8)
        assert C.eval_c_checked(e, args) == B.eval_b(d.expr, args[:n], args[n:])


# ---------------------------------------------------------------- C -> B helpers


def test_P_and_Y():
    assert render_literal(B.eval_b(P, ["11"], ["1010"])) == "10"
    assert render_literal(B.eval_b(P, ["eps"], ["1010"])) == "1010"
    assert render_literal(B.eval_b(Y, ["1", "111"], ["1010"])) == "10"


def test_one_and_dummies():
    assert render_literal(B.eval_b(ONE, ["101"], ["0"])) == "1"
    e = b_dummies(B.PLUS, 1, 2)
    assert B.arity_b(e) == (2, 3)
    assert B.eval_b(e, ["0", "11"], ["1", "1", "0"]) == B.eval_b(B.PLUS, ["11"], ["0"])


def test_padding_polynomials():
    assert print_canonical(pol_c_to_b(C.Smash())) == "x0 + 2*x1 + 18"
    assert print_canonical(pol_c_to_b(C.O())) == "0"
    assert print_canonical(pol_c_to_b(C.Comp(1, C.Succ(1), (C.Proj(0, 1),)))) == "0"


def test_padded_projection():
    sim = c_to_b_padded(C.Proj(0, 2))
    assert sim.expr == B.Proj(1, 1, 2)
    assert render_literal(B.eval_b(sim.expr, ["eps"], ["10", "1"])) == "10"


def test_padded_examples():
    sim = c_to_b_padded(SUCC)
    w = pad(evaluate(sim.bound, [2]))
    assert render_literal(B.eval_b(sim.expr, [w], ["11"])) == "100"
    smash = c_to_b_padded(C.Smash())
    assert evaluate(smash.bound, [2, 2]) == 24
    assert render_literal(B.eval_b(smash.expr, [pad(24)], ["10", "11"])) == "10000"
    assert render_literal(B.eval_b(SMASH_B, [pad(24)], ["eps", "1011"])) == "1"


def test_smash_needs_only_the_tighter_threshold():
    # the recurrence gives x0 + 2*x1 + 6; the constant 18 in SMASH_PADDING is looser
    for x, y in itertools.product(all_bitstrings(3), repeat=2):
        w = pad(len(x) + 2 * len(y) + 6)
        assert B.eval_b(SMASH_B, [w], [x, y]) == C.eval_c(C.Smash(), [x, y])


def test_smash_length_law():
    rng = random.Random(5)
    for _ in range(100):
        x, y = random_args(rng, 2, 6)
        w = pad(len(x) + 2 * len(y) + 18)
        assert len(B.eval_b(SMASH_B, [w], [x, y])) == len(x) * len(y) + 1


def test_simulated_pred_and_succ():
    rng = random.Random(9)
    sim = c_to_b_padded(PRED_C)
    for _ in range(200):
        (x,) = random_args(rng, 1, 10)
        w = pad(evaluate(sim.bound, [len(x)]))
        assert B.eval_b(sim.expr, [w], [x]) == Bitstring(x.raw[1:])
    sim = c_to_b_padded(SUCC)
    for x in all_bitstrings(10):
        w = pad(evaluate(sim.bound, [len(x)]))
        assert B.eval_b(sim.expr, [w], [x]) == C.eval_c(SUCC, [x])


def test_padded_arity():
    for d in stdlib.all_defs():
        if d.cls == "C":
            assert B.arity_b(c_to_b_padded(d.expr).expr) == (1, d.expected_arity)


@pytest.mark.parametrize("d", [d for d in stdlib.all_defs() if d.cls == "C"], ids=lambda d: d.name)
def test_padding_function_is_exact(d):
    rng = random.Random(d.name)
    bound = pol_c_to_b(d.expr)
    b_f = padding_function(d.expr)
    for _ in range(20):
        args = random_args(rng, d.expected_arity, 8)
        assert len(B.eval_b(b_f, args)) == evaluate(bound, [len(a) for a in args])


def test_closed_examples():
    assert render_literal(B.eval_b(c_to_b_closed(SUCC), ["11"])) == "100"
    assert render_literal(B.eval_b(c_to_b_closed(C.Smash()), ["10", "11"])) == "10000"
    assert B.eval_b(c_to_b_closed(C.O()), []) == Bitstring("")


@pytest.mark.parametrize("d", [d for d in stdlib.all_defs() if d.cls == "C"], ids=lambda d: d.name)
def test_threshold_stability_and_closed_form(d):
    rng = random.Random(d.name)
    sim = c_to_b_padded(d.expr)
    closed = c_to_b_closed(d.expr)
    for _ in range(30):
        args = random_args(rng, d.expected_arity, 6)
        want = C.eval_c(d.expr, args)
        assert B.eval_b(closed, args) == want
        threshold = evaluate(sim.bound, [len(a) for a in args])
        for extra in (0, 1, 5):
            assert B.eval_b(sim.expr, [pad(threshold + extra)], args) == want


@pytest.mark.parametrize("name", ["plus", "one", "pred_b", "bit_not"])
def test_b_c_b_round_trip(name):
    d = stdlib.lookup(name)
    n, s = d.expected_arity
    there_and_back = c_to_b_closed(b_to_c(d.expr))
    assert B.arity_b(there_and_back) == (n + s, 0)
    rng = random.Random(name)
    for _ in range(20):
        args = random_args(rng, n + s, 5)
        assert B.eval_b(there_and_back, args) == B.eval_b(d.expr, args[:n], args[n:])


def test_unary_target_with_product():
    p = MPoly.from_monomials(2, [(1, [(0, 1), (1, 1)])])
    e = C.poly_to_c(p)
    closed = c_to_b_closed(e)
    for x, y in itertools.product(all_bitstrings(2), repeat=2):
        assert B.eval_b(closed, [x, y]) == C.eval_c(e, [x, y])
