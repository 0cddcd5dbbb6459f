import random

import pytest

from generators import random_args, random_b_expr
from polytime import bellantoni as B
from polytime import binf as I
from polytime import stdlib
from polytime.errors import InferenceError

PLUS_INF = I.Rec(
    I.ProjS(0),
    I.Comp(I.Succ(1), (), (I.ProjS(0),)),
    I.Comp(I.Succ(1), (), (I.ProjS(0),)),
)


def test_arity_free_plus_infers_to_plus():
    assert I.infer(PLUS_INF) == B.PLUS
    assert B.arity_b(I.infer(PLUS_INF)) == (1, 1)


def test_mult_round_trip():
    assert I.infer(I.erase(B.MULT)) == B.MULT


def test_floor_raises_arity():
    assert I.infer(I.ProjN(0), (3, 2)) == B.Proj(0, 3, 2)
    raised = I.infer(PLUS_INF, (3, 2))
    assert B.arity_b(raised) == (3, 2)
    assert B.eval_b(raised, ["11", "0", "1"], ["0", "1"]) == B.eval_b(B.PLUS, ["11"], ["0"])


def test_floor_below_minimum_is_ignored():
    assert B.arity_b(I.infer(PLUS_INF, (0, 0))) == (1, 1)


def test_erase_projections():
    assert I.erase(B.Proj(1, 1, 2)) == I.ProjS(0)
    assert I.erase(B.Proj(0, 2, 1)) == I.ProjN(0)


@pytest.mark.parametrize(
    "term",
    [
        # succ has no normal inputs but is fed one
        I.Comp(I.Succ(1), (I.ProjN(0),), ()),
        # a normal argument may not read a safe input
        I.Comp(I.erase(B.MULT), (I.ProjN(0), I.ProjS(0)), ()),
        # cond as base fixes the step arity to (1, 5), which pred cannot have
        I.Rec(I.Cond(), I.Pred(), I.Pred()),
    ],
)
def test_unsatisfiable_terms(term):
    with pytest.raises(InferenceError):
        I.infer(term)


def test_inference_is_minimal_on_stdlib_and_random_terms():
    rng = random.Random(3)
    subjects = [d.expr for d in stdlib.all_defs() if d.cls == "B"]
    subjects += [random_b_expr(rng) for _ in range(100)]
    for e in subjects:
        bare = I.erase(e)
        inferred = I.infer(bare)
        declared, got = B.arity_b(e), B.arity_b(inferred)
        assert got.normal <= declared.normal and got.safe <= declared.safe
        assert I.erase(inferred) == bare
        floored = I.infer(bare, tuple(declared))
        assert B.arity_b(floored) == declared
        n = declared.normal
        for _ in range(5):
            args = random_args(rng, sum(declared), 6)
            assert B.eval_b(floored, args[:n], args[n:]) == B.eval_b(e, args[:n], args[n:])
