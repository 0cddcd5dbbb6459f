"""Cobham's class C: syntax, arity checking, semantics and length bounds.

Expressions are immutable trees built from six constructors::

    O                 constant empty string
    Proj(i, n)        i-th of n arguments
    Succ(b)           append bit b at the low end
    Smash             #(x, y) = 1 followed by |x|*|y| zeros
    Comp(n, h, gs)    h(g_1(x), ..., g_k(x)) at arity n
    Rec(g, h0, h1, j) recursion on notation bounded by j

Membership in C also needs the semantic side condition ``|f(y, x)| <= |j(y, x)|``
on every recursion. It is not decidable, so it is checked dynamically by
:func:`eval_c_checked`.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from operator import itemgetter
from typing import Callable, Dict, Sequence, Tuple, Union

from . import mpoly
from .bitstring import Bitstring, as_args
from .errors import ArgumentMismatch, BoundViolation, IllFormed
from .mpoly import MPoly

__all__ = [
    "CExpr",
    "O",
    "Proj",
    "Succ",
    "Smash",
    "Comp",
    "Rec",
    "arity_c",
    "eval_c",
    "eval_c_checked",
    "pol_c",
    "poly_to_c",
    "node_count",
]


class CExpr:
    """Base class of Cobham expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class O(CExpr):
    pass


@dataclass(frozen=True)
class Proj(CExpr):
    i: int
    n: int


@dataclass(frozen=True)
class Succ(CExpr):
    b: int


@dataclass(frozen=True)
class Smash(CExpr):
    pass


@dataclass(frozen=True)
class Comp(CExpr):
    n: int
    h: CExpr
    gs: Tuple[CExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "gs", tuple(self.gs))


@dataclass(frozen=True)
class Rec(CExpr):
    g: CExpr
    h0: CExpr
    h1: CExpr
    j: CExpr


ArgLike = Union[Bitstring, str]


def _ensure_stack():
    if sys.getrecursionlimit() < 20000:
        sys.setrecursionlimit(20000)


def children(e: CExpr):
    """Yield ``(selector, child)`` pairs; selectors make up error paths."""
    if isinstance(e, Comp):
        yield "h", e.h
        for k, g in enumerate(e.gs):
            yield f"gs[{k}]", g
    elif isinstance(e, Rec):
        yield "g", e.g
        yield "h0", e.h0
        yield "h1", e.h1
        yield "j", e.j


def node_count(e: CExpr) -> int:
    """Number of nodes of ``e`` as a tree (shared subterms counted per use)."""
    memo: Dict[int, int] = {}

    def count(t):
        key = id(t)
        if key not in memo:
            memo[key] = 1 + sum(count(c) for _, c in children(t))
        return memo[key]

    _ensure_stack()
    return count(e)


# ---------------------------------------------------------------- arities


def arity_c(e: CExpr) -> int:
    """Arity of a well-formed expression; :class:`IllFormed` otherwise."""
    _ensure_stack()
    return _arity(e, (), {})


def _arity(e, path, memo) -> int:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, O):
        a = 0
    elif isinstance(e, Proj):
        if not 0 <= e.i < e.n:
            raise IllFormed("proj", f"projection index {e.i} not below arity {e.n}", path, e)
        a = e.n
    elif isinstance(e, Succ):
        if e.b not in (0, 1):
            raise IllFormed("succ", f"successor bit must be 0 or 1, got {e.b!r}", path, e)
        a = 1
    elif isinstance(e, Smash):
        a = 2
    elif isinstance(e, Comp):
        ah = _arity(e.h, path + ("h",), memo)
        if ah != len(e.gs):
            raise IllFormed(
                "comp", f"head has arity {ah} but {len(e.gs)} argument functions are given", path, e
            )
        for k, g in enumerate(e.gs):
            ag = _arity(g, path + (f"gs[{k}]",), memo)
            if ag != e.n:
                raise IllFormed(
                    "comp", f"argument function gs[{k}] has arity {ag}, expected {e.n}", path, e
                )
        a = e.n
    elif isinstance(e, Rec):
        ag = _arity(e.g, path + ("g",), memo)
        ah0 = _arity(e.h0, path + ("h0",), memo)
        ah1 = _arity(e.h1, path + ("h1",), memo)
        aj = _arity(e.j, path + ("j",), memo)
        if ah0 != ah1:
            raise IllFormed("rec", f"step functions disagree: h0 has arity {ah0}, h1 has {ah1}", path, e)
        if ah0 != ag + 2:
            raise IllFormed("rec", f"step arity {ah0} must be base arity {ag} + 2", path, e)
        if ah0 != aj + 1:
            raise IllFormed("rec", f"step arity {ah0} must be bound arity {aj} + 1", path, e)
        a = aj
    else:
        raise IllFormed("syntax", f"not a Cobham expression: {e!r}", path, e)
    memo[key] = a
    return a


def _check_args(e, args) -> Tuple[Bitstring, ...]:
    args = as_args(args)
    a = arity_c(e)
    if a != len(args):
        raise ArgumentMismatch(f"expression has arity {a} but {len(args)} arguments were given")
    return args


# ---------------------------------------------------------------- semantics

RawFn = Callable[[tuple], str]

_compiled: Dict[int, Tuple[CExpr, RawFn]] = {}


def _compile(e: CExpr, memo: Dict[int, RawFn]) -> RawFn:
    key = id(e)
    fn = memo.get(key)
    if fn is not None:
        return fn
    if isinstance(e, O):
        def fn(a):
            return ""
    elif isinstance(e, Proj):
        fn = itemgetter(e.i)
    elif isinstance(e, Succ):
        bit = "1" if e.b else "0"

        def fn(a):
            return bit + a[0]
    elif isinstance(e, Smash):
        def fn(a):
            return "0" * (len(a[0]) * len(a[1])) + "1"
    elif isinstance(e, Comp):
        h = _compile(e.h, memo)
        gs = tuple(_compile(g, memo) for g in e.gs)
        if len(gs) == 1:
            g0 = gs[0]

            def fn(a):
                return h((g0(a),))
        elif len(gs) == 2:
            g0, g1 = gs

            def fn(a):
                return h((g0(a), g1(a)))
        else:
            def fn(a):
                return h(tuple([g(a) for g in gs]))
    elif isinstance(e, Rec):
        g = _compile(e.g, memo)
        h0 = _compile(e.h0, memo)
        h1 = _compile(e.h1, memo)

        def fn(a):
            y = a[0]
            rest = a[1:]
            acc = g(rest)
            for k in range(len(y) - 1, -1, -1):
                step = h1 if y[k] == "1" else h0
                acc = step((y[k + 1:], acc) + rest)
            return acc
    else:
        raise IllFormed("syntax", f"not a Cobham expression: {e!r}")
    memo[key] = fn
    return fn


def compile_c(e: CExpr) -> RawFn:
    """Compile ``e`` to a function on tuples of raw (lsb-first) bit strings."""
    hit = _compiled.get(id(e))
    if hit is not None and hit[0] is e:
        return hit[1]
    arity_c(e)
    _ensure_stack()
    fn = _compile(e, {})
    if len(_compiled) > 4096:
        _compiled.clear()
    _compiled[id(e)] = (e, fn)
    return fn


def eval_c(e: CExpr, args: Sequence[ArgLike]) -> Bitstring:
    """Evaluate ``e`` on ``args`` (the RecBounded condition is not checked)."""
    args = _check_args(e, args)
    return Bitstring(compile_c(e)(tuple(a.raw for a in args)))


def eval_c_checked(e: CExpr, args: Sequence[ArgLike]) -> Bitstring:
    """Evaluate ``e`` while checking ``|f(y, x)| <= |j(y, x)|`` at every recursion.

    The condition is tested for every prefix ``y`` of the recursion argument
    reached during evaluation, the empty prefix included. Raises
    :class:`BoundViolation` on the first failure.
    """
    args = _check_args(e, args)
    _ensure_stack()
    return Bitstring(_eval_checked(e, tuple(a.raw for a in args), ()))


def _eval_checked(e, a, path) -> str:
    if isinstance(e, O):
        return ""
    if isinstance(e, Proj):
        return a[e.i]
    if isinstance(e, Succ):
        return ("1" if e.b else "0") + a[0]
    if isinstance(e, Smash):
        return "0" * (len(a[0]) * len(a[1])) + "1"
    if isinstance(e, Comp):
        vals = tuple(_eval_checked(g, a, path + (f"gs[{k}]",)) for k, g in enumerate(e.gs))
        return _eval_checked(e.h, vals, path + ("h",))
    if isinstance(e, Rec):
        y = a[0]
        rest = a[1:]
        acc = _eval_checked(e.g, rest, path + ("g",))
        for k in range(len(y), -1, -1):
            prefix = y[k + 1:] if k < len(y) else ""
            if k < len(y):
                step, sel = (e.h1, "h1") if y[k] == "1" else (e.h0, "h0")
                acc = _eval_checked(step, (prefix, acc) + rest, path + (sel,))
                prefix = y[k:]
            bound = _eval_checked(e.j, (prefix,) + rest, path + ("j",))
            if len(acc) > len(bound):
                shown = (Bitstring(prefix),) + tuple(Bitstring(r) for r in rest)
                raise BoundViolation(e, shown, len(acc), len(bound), path)
        return acc
    raise IllFormed("syntax", f"not a Cobham expression: {e!r}", path, e)


# ---------------------------------------------------------------- bounds


def pol_c(e: CExpr) -> MPoly:
    """Length-bounding polynomial: ``|e(x)| <= pol_c(e)(|x|)`` under RecBounded."""
    arity_c(e)
    _ensure_stack()
    return _pol(e, {})


def _pol(e, memo) -> MPoly:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, O):
        p = mpoly.constant(0, 0)
    elif isinstance(e, Proj):
        p = mpoly.variable(e.n, e.i)
    elif isinstance(e, Succ):
        p = mpoly.variable(1, 0) + mpoly.constant(1, 1)
    elif isinstance(e, Smash):
        p = mpoly.variable(2, 0) * mpoly.variable(2, 1) + mpoly.constant(2, 1)
    elif isinstance(e, Comp):
        p = mpoly.compose(_pol(e.h, memo), [_pol(g, memo) for g in e.gs], e.n)
    elif isinstance(e, Rec):
        p = _pol(e.j, memo)
    else:
        raise IllFormed("syntax", f"not a Cobham expression: {e!r}")
    memo[key] = p
    return p


# ---------------------------------------------------------------- unary encoding of polynomials

# |pred(x)| = max(|x| - 1, 0): drop the low bit.
PRED = Rec(O(), Proj(0, 2), Proj(0, 2), Proj(0, 1))

# |add(u, v)| = |u| + |v|: one bit appended to v per bit of u.
# Bound: |#(u1, v1)| = (|u|+1)(|v|+1) + 1 >= |u| + |v|.
ADD_LEN = Rec(
    Proj(0, 1),
    Comp(3, Succ(1), (Proj(1, 3),)),
    Comp(3, Succ(1), (Proj(1, 3),)),
    Comp(2, Smash(), (Comp(2, Succ(1), (Proj(0, 2),)), Comp(2, Succ(1), (Proj(1, 2),)))),
)

# |mul(u, v)| = |u| * |v|: smash, then cancel its leading 1.
MUL_LEN = Comp(2, PRED, (Comp(2, Smash(), (Proj(0, 2), Proj(1, 2))),))


def zero_c(n: int) -> CExpr:
    return Comp(n, O(), ())


def const_c(n: int, c: int) -> CExpr:
    """Arity-``n`` expression returning ``1`` repeated ``c`` times."""
    e = zero_c(n)
    for _ in range(c):
        e = Comp(n, Succ(1), (e,))
    return e


def add_c(n: int, u: CExpr, v: CExpr) -> CExpr:
    return Comp(n, ADD_LEN, (u, v))


def mul_c(n: int, u: CExpr, v: CExpr) -> CExpr:
    return Comp(n, MUL_LEN, (u, v))


def poly_to_c(p: MPoly) -> CExpr:
    """C expression of arity ``p.num_vars`` whose output length is ``p(|x|)``.

    Only the length of the output is meaningful.
    """
    n = p.num_vars
    summands = []
    constant_term = 0
    for exps, coef in p.terms:
        factors = [Proj(i, n) for i, e in enumerate(exps) for _ in range(e)]
        if not factors:
            constant_term += coef
            continue
        mono = factors[0]
        for f in factors[1:]:
            mono = mul_c(n, mono, f)
        term = mono
        for _ in range(coef - 1):
            term = add_c(n, term, mono)
        summands.append(term)
    if constant_term or not summands:
        summands.append(const_c(n, constant_term))
    total = summands[0]
    for s in summands[1:]:
        total = add_c(n, total, s)
    return total
