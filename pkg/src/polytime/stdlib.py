"""Named polytime functions in both classes, each with a reference oracle.

``plus`` and ``mult`` are *length* arithmetic: ``|plus(x; y)| = |x| + |y|``
and ``|mult(x, y;)| = |x| * |y|``. They are not binary addition and
multiplication.

The bitwise operations recurse on their first (normal) argument and read the
second one through a safe position. Their output has the length of the first
argument; missing bits of the second argument count as 0. ``eq_test``
returns ``1`` for equal arguments and the empty string otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Tuple, Union

from . import bellantoni as B
from . import cobham as C
from .bellantoni import BArity
from .bitstring import Bitstring
from .errors import UnknownName
from .translate import ONE, PRED_C, P, Y

__all__ = ["Def", "lookup", "all_defs", "names"]


@dataclass(frozen=True)
class Def:
    name: str
    cls: str  # "C" or "B"
    expr: Union[C.CExpr, B.BExpr]
    expected_arity: Union[int, BArity]
    oracle: Callable[..., Bitstring]
    doc: str

    def arity(self):
        return C.arity_c(self.expr) if self.cls == "C" else B.arity_b(self.expr)

    def evaluate(self, *args):
        """Evaluate on ``args``; for B definitions the normals come first."""
        if self.cls == "C":
            return C.eval_c(self.expr, args)
        n = self.expected_arity.normal
        return B.eval_b(self.expr, args[:n], args[n:])


# ---------------------------------------------------------------- constructions

SUCC_C = C.Rec(
    C.Comp(0, C.Succ(1), (C.O(),)),
    C.Comp(2, C.Succ(1), (C.Proj(0, 2),)),
    C.Comp(2, C.Succ(0), (C.Proj(1, 2),)),
    C.Comp(1, C.Succ(1), (C.Proj(0, 1),)),
)

_EPS_22 = B.Comp(2, 2, B.Zero(), (), ())
_REC_VALUE = B.Proj(2, 2, 2)


def _y_bit_selector() -> B.BExpr:
    """Inside ``F(z, x; r, y)``: ``y`` shifted so its low bit lines up with the bit being processed."""
    s1z = B.Comp(2, 0, B.Succ(1), (), (B.Proj(0, 2, 0),))
    return B.Comp(2, 2, Y, (s1z, B.Proj(1, 2, 0)), (B.Proj(3, 2, 2),))


def _run_on_self(F: B.BExpr) -> B.BExpr:
    """``op(x; y) = F(x, x; y)``."""
    x = B.Proj(0, 1, 0)
    return B.Comp(1, 1, F, (x, x), (B.Proj(1, 1, 1),))


def bitwise(table: Dict[Tuple[int, int], int]) -> B.BExpr:
    """Binary bitwise operation given by ``table[(x_bit, y_bit)]``, arity ``(1, 1)``."""
    selector = _y_bit_selector()

    def emit(bit):
        return B.Comp(2, 2, B.Succ(bit), (), (_REC_VALUE,))

    steps = []
    for xb in (0, 1):
        on_zero = emit(table[(xb, 0)])
        on_one = emit(table[(xb, 1)])
        steps.append(B.Comp(2, 2, B.Cond(), (), (selector, on_zero, on_zero, on_one)))
    F = B.Rec(B.Comp(1, 1, B.Zero(), (), ()), steps[0], steps[1])
    return _run_on_self(F)


def _eq_test() -> B.BExpr:
    selector = _y_bit_selector()
    eps = B.Comp(1, 1, B.Zero(), (), ())
    # base: "1" iff y has no bits beyond the |x| already compared
    rest_of_y = B.Comp(1, 1, P, (B.Proj(0, 1, 0),), (B.Proj(1, 1, 1),))
    base = B.Comp(1, 1, B.Cond(), (), (rest_of_y, ONE, eps, eps))
    on_x0 = B.Comp(2, 2, B.Cond(), (), (selector, _EPS_22, _REC_VALUE, _EPS_22))
    on_x1 = B.Comp(2, 2, B.Cond(), (), (selector, _EPS_22, _EPS_22, _REC_VALUE))
    return _run_on_self(B.Rec(base, on_x0, on_x1))


BIT_NOT = B.Rec(
    B.Zero(),
    B.Comp(1, 1, B.Succ(1), (), (B.Proj(1, 1, 1),)),
    B.Comp(1, 1, B.Succ(0), (), (B.Proj(1, 1, 1),)),
)

XOR = bitwise({(a, b): a ^ b for a in (0, 1) for b in (0, 1)})
BIT_AND = bitwise({(a, b): a & b for a in (0, 1) for b in (0, 1)})
BIT_OR = bitwise({(a, b): a | b for a in (0, 1) for b in (0, 1)})
EQ_TEST = _eq_test()


# ---------------------------------------------------------------- oracles


def _succ_oracle(x: Bitstring) -> Bitstring:
    raw = x.raw
    k = 0
    while k < len(raw) and raw[k] == "1":
        k += 1
    return Bitstring("0" * k + "1" + raw[k + 1:])


def _pointwise(op):
    def oracle(x: Bitstring, y: Bitstring) -> Bitstring:
        ybits = y.raw.ljust(len(x.raw), "0")
        return Bitstring("".join(str(op(int(a), int(b))) for a, b in zip(x.raw, ybits)))

    return oracle


_FLIP = str.maketrans("01", "10")


def _cond_oracle(w, x, y, z):
    if not w.raw:
        return x
    return y if w.raw[0] == "0" else z


_DEFS = (
    Def("succ_c", "C", SUCC_C, 1, _succ_oracle, "binary successor"),
    Def("pred_c", "C", PRED_C, 1, lambda x: Bitstring(x.raw[1:]), "drop the low bit (translated pred)"),
    Def(
        "smash",
        "C",
        C.Smash(),
        2,
        lambda x, y: Bitstring("0" * (len(x) * len(y)) + "1"),
        "1 followed by |x|*|y| zeros",
    ),
    Def(
        "add_len_c",
        "C",
        C.ADD_LEN,
        2,
        lambda x, y: Bitstring("1" * len(x) + y.raw),
        "y followed by |x| ones: length addition",
    ),
    Def(
        "plus",
        "B",
        B.PLUS,
        BArity(1, 1),
        lambda x, y: Bitstring("1" * len(x) + y.raw),
        "length addition: y followed by |x| ones",
    ),
    Def(
        "mult",
        "B",
        B.MULT,
        BArity(2, 0),
        lambda x, y: Bitstring("1" * (len(x) * len(y))),
        "length multiplication: |x|*|y| ones",
    ),
    Def("one", "B", ONE, BArity(1, 1), lambda x, y: Bitstring("1"), "constant 1, both arguments ignored"),
    Def("pred_b", "B", B.Pred(), BArity(0, 1), lambda x: Bitstring(x.raw[1:]), "drop the low bit"),
    Def("cond_b", "B", B.Cond(), BArity(0, 4), _cond_oracle, "three-way test on the first argument"),
    Def(
        "bit_not",
        "B",
        BIT_NOT,
        BArity(1, 0),
        lambda x: Bitstring(x.raw.translate(_FLIP)),
        "flip every bit",
    ),
    Def("xor", "B", XOR, BArity(1, 1), _pointwise(lambda a, b: a ^ b), "bitwise exclusive or"),
    Def("bit_and", "B", BIT_AND, BArity(1, 1), _pointwise(lambda a, b: a & b), "bitwise and"),
    Def("bit_or", "B", BIT_OR, BArity(1, 1), _pointwise(lambda a, b: a | b), "bitwise or"),
    Def(
        "eq_test",
        "B",
        EQ_TEST,
        BArity(1, 1),
        lambda x, y: Bitstring("1" if x == y else ""),
        "1 if the arguments are identical, eps otherwise",
    ),
)

_BY_NAME = {d.name: d for d in _DEFS}


def lookup(name: str) -> Def:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownName(name) from None


def all_defs() -> Tuple[Def, ...]:
    return _DEFS


def names(cls: str = None) -> Tuple[str, ...]:
    return tuple(d.name for d in _DEFS if cls is None or d.cls == cls)
