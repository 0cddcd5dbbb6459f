"""Bellantoni-Cook's class B with explicit (normal, safe) arity annotations.

Arguments are split into normal ones (left of the semicolon) and safe ones::

    f(x0, ..., x{n-1}; y0, ..., y{s-1})

Recursion only destructs a normal argument and hands the recursive value to
the step function at a safe position, which is what keeps every expression
polytime without an explicit bound.

Besides plain evaluation this module provides the time-indexed evaluator, the
polymax length bound :func:`pol_b`, the running-time bound :func:`pol_time`
and the pair of univariate envelopes built from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, NamedTuple, Sequence, Tuple, Union

from . import mpoly
from .bitstring import Bitstring, as_args
from .cobham import _ensure_stack
from .errors import ArgumentMismatch, IllFormed
from .mpoly import MPoly, UPoly

__all__ = [
    "BExpr",
    "BArity",
    "Zero",
    "Proj",
    "Succ",
    "Pred",
    "Cond",
    "Comp",
    "Rec",
    "TimedResult",
    "arity_b",
    "eval_b",
    "eval_b_timed",
    "pol_b",
    "pol_time",
    "poly_to_b",
    "ppt_envelope",
    "PLUS",
    "MULT",
    "node_count",
]


class BExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(BExpr):
    pass


@dataclass(frozen=True)
class Proj(BExpr):
    i: int
    n: int
    s: int


@dataclass(frozen=True)
class Succ(BExpr):
    b: int


@dataclass(frozen=True)
class Pred(BExpr):
    pass


@dataclass(frozen=True)
class Cond(BExpr):
    pass


@dataclass(frozen=True)
class Comp(BExpr):
    n: int
    s: int
    h: BExpr
    gN: Tuple[BExpr, ...]
    gS: Tuple[BExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "gN", tuple(self.gN))
        object.__setattr__(self, "gS", tuple(self.gS))


@dataclass(frozen=True)
class Rec(BExpr):
    g: BExpr
    h0: BExpr
    h1: BExpr


class BArity(NamedTuple):
    normal: int
    safe: int

    def __str__(self):
        return f"({self.normal}, {self.safe})"


class TimedResult(NamedTuple):
    value: Bitstring
    cost: int


ArgLike = Union[Bitstring, str]


def children(e: BExpr):
    if isinstance(e, Comp):
        yield "h", e.h
        for k, g in enumerate(e.gN):
            yield f"gN[{k}]", g
        for k, g in enumerate(e.gS):
            yield f"gS[{k}]", g
    elif isinstance(e, Rec):
        yield "g", e.g
        yield "h0", e.h0
        yield "h1", e.h1


def node_count(e: BExpr) -> int:
    memo: Dict[int, int] = {}

    def count(t):
        key = id(t)
        if key not in memo:
            memo[key] = 1 + sum(count(c) for _, c in children(t))
        return memo[key]

    _ensure_stack()
    return count(e)


# ---------------------------------------------------------------- arities


def arity_b(e: BExpr) -> BArity:
    _ensure_stack()
    return _arity(e, (), {})


def _arity(e, path, memo) -> BArity:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, Zero):
        a = BArity(0, 0)
    elif isinstance(e, Proj):
        if e.n < 0 or e.s < 0 or not 0 <= e.i < e.n + e.s:
            raise IllFormed("proj", f"projection index {e.i} not below n + s = {e.n + e.s}", path, e)
        a = BArity(e.n, e.s)
    elif isinstance(e, Succ):
        if e.b not in (0, 1):
            raise IllFormed("succ", f"successor bit must be 0 or 1, got {e.b!r}", path, e)
        a = BArity(0, 1)
    elif isinstance(e, Pred):
        a = BArity(0, 1)
    elif isinstance(e, Cond):
        a = BArity(0, 4)
    elif isinstance(e, Comp):
        ah = _arity(e.h, path + ("h",), memo)
        if ah != (len(e.gN), len(e.gS)):
            raise IllFormed(
                "comp",
                f"head has arity {ah} but ({len(e.gN)}, {len(e.gS)}) argument functions are given",
                path,
                e,
            )
        for k, g in enumerate(e.gN):
            ag = _arity(g, path + (f"gN[{k}]",), memo)
            if ag != (e.n, 0):
                raise IllFormed(
                    "comp", f"normal argument gN[{k}] has arity {ag}, expected ({e.n}, 0)", path, e
                )
        for k, g in enumerate(e.gS):
            ag = _arity(g, path + (f"gS[{k}]",), memo)
            if ag != (e.n, e.s):
                raise IllFormed(
                    "comp", f"safe argument gS[{k}] has arity {ag}, expected ({e.n}, {e.s})", path, e
                )
        a = BArity(e.n, e.s)
    elif isinstance(e, Rec):
        ag = _arity(e.g, path + ("g",), memo)
        ah0 = _arity(e.h0, path + ("h0",), memo)
        ah1 = _arity(e.h1, path + ("h1",), memo)
        if ah0 != ah1:
            raise IllFormed("rec", f"step functions disagree: h0 has arity {ah0}, h1 has {ah1}", path, e)
        expected = (ag.normal + 1, ag.safe + 1)
        if ah0 != expected:
            raise IllFormed(
                "rec", f"step arity {ah0} must be base arity {ag} plus (1, 1) = {BArity(*expected)}", path, e
            )
        a = BArity(ah0.normal, ag.safe)
    else:
        raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {e!r}", path, e)
    memo[key] = a
    return a


def _check_args(e, normals, safes):
    normals = as_args(normals)
    safes = as_args(safes)
    a = arity_b(e)
    if a != (len(normals), len(safes)):
        raise ArgumentMismatch(
            f"expression has arity {a} but ({len(normals)}, {len(safes)}) arguments were given"
        )
    return normals, safes


# ---------------------------------------------------------------- semantics

RawFn = Callable[[tuple, tuple], str]

_compiled: Dict[int, Tuple[BExpr, RawFn]] = {}


def _compile(e: BExpr, memo) -> RawFn:
    key = id(e)
    fn = memo.get(key)
    if fn is not None:
        return fn
    if isinstance(e, Zero):
        def fn(ns, ss):
            return ""
    elif isinstance(e, Proj):
        i, n = e.i, e.n
        if i < n:
            def fn(ns, ss):
                return ns[i]
        else:
            j = i - n

            def fn(ns, ss):
                return ss[j]
    elif isinstance(e, Succ):
        bit = "1" if e.b else "0"

        def fn(ns, ss):
            return bit + ss[0]
    elif isinstance(e, Pred):
        def fn(ns, ss):
            return ss[0][1:]
    elif isinstance(e, Cond):
        def fn(ns, ss):
            w = ss[0]
            if not w:
                return ss[1]
            return ss[2] if w[0] == "0" else ss[3]
    elif isinstance(e, Comp):
        fn = _compile_comp(e, memo)
    elif isinstance(e, Rec):
        g = _compile(e.g, memo)
        h0 = _compile(e.h0, memo)
        h1 = _compile(e.h1, memo)

        def fn(ns, ss):
            z = ns[0]
            rest = ns[1:]
            acc = g(rest, ss)
            for k in range(len(z) - 1, -1, -1):
                step = h1 if z[k] == "1" else h0
                acc = step((z[k + 1:],) + rest, (acc,) + ss)
            return acc
    else:
        raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {e!r}")
    memo[key] = fn
    return fn


def _compile_comp(e: Comp, memo) -> RawFn:
    gN = tuple(_compile(g, memo) for g in e.gN)
    gS = tuple(_compile(g, memo) for g in e.gS)
    empty = ()
    if isinstance(e.h, Cond):
        # cond only looks at the selected branch; the others need not be computed.
        scrutinee, if_eps, if_even, if_odd = gS

        def fn(ns, ss):
            w = scrutinee(ns, ss)
            if not w:
                return if_eps(ns, ss)
            return if_even(ns, ss) if w[0] == "0" else if_odd(ns, ss)

        return fn
    if isinstance(e.h, Pred) and not gN:
        (g0,) = gS

        def fn(ns, ss):
            return g0(ns, ss)[1:]

        return fn
    if isinstance(e.h, Succ) and not gN:
        bit = "1" if e.h.b else "0"
        (g0,) = gS

        def fn(ns, ss):
            return bit + g0(ns, ss)

        return fn
    h = _compile(e.h, memo)

    def fn(ns, ss):
        nv = tuple([g(ns, empty) for g in gN])
        sv = tuple([g(ns, ss) for g in gS])
        return h(nv, sv)

    return fn


def compile_b(e: BExpr) -> RawFn:
    """Compile ``e`` to a function on tuples of raw (lsb-first) bit strings."""
    hit = _compiled.get(id(e))
    if hit is not None and hit[0] is e:
        return hit[1]
    arity_b(e)
    _ensure_stack()
    fn = _compile(e, {})
    if len(_compiled) > 4096:
        _compiled.clear()
    _compiled[id(e)] = (e, fn)
    return fn


def eval_b(e: BExpr, normals: Sequence[ArgLike], safes: Sequence[ArgLike] = ()) -> Bitstring:
    normals, safes = _check_args(e, normals, safes)
    fn = compile_b(e)
    return Bitstring(fn(tuple(x.raw for x in normals), tuple(y.raw for y in safes)))


def eval_b_timed(e: BExpr, normals: Sequence[ArgLike], safes: Sequence[ArgLike] = ()) -> TimedResult:
    """Evaluate with a step counter.

    Each primitive application (zero, projection, successor, pred, cond)
    costs 1. A composition costs whatever its argument functions and its head
    cost; a recursion costs its base case plus every step taken. All
    arguments of a composition are evaluated, including unused cond branches.
    """
    normals, safes = _check_args(e, normals, safes)
    _ensure_stack()
    value, cost = _eval_timed(e, tuple(x.raw for x in normals), tuple(y.raw for y in safes))
    return TimedResult(Bitstring(value), cost)


def _eval_timed(e, ns, ss):
    if isinstance(e, Zero):
        return "", 1
    if isinstance(e, Proj):
        return (ns[e.i] if e.i < e.n else ss[e.i - e.n]), 1
    if isinstance(e, Succ):
        return ("1" if e.b else "0") + ss[0], 1
    if isinstance(e, Pred):
        return ss[0][1:], 1
    if isinstance(e, Cond):
        w = ss[0]
        if not w:
            return ss[1], 1
        return (ss[2] if w[0] == "0" else ss[3]), 1
    if isinstance(e, Comp):
        cost = 0
        nv = []
        for g in e.gN:
            v, c = _eval_timed(g, ns, ())
            nv.append(v)
            cost += c
        sv = []
        for g in e.gS:
            v, c = _eval_timed(g, ns, ss)
            sv.append(v)
            cost += c
        v, c = _eval_timed(e.h, tuple(nv), tuple(sv))
        return v, cost + c
    if isinstance(e, Rec):
        z = ns[0]
        rest = ns[1:]
        acc, cost = _eval_timed(e.g, rest, ss)
        for k in range(len(z) - 1, -1, -1):
            step = e.h1 if z[k] == "1" else e.h0
            acc, c = _eval_timed(step, (z[k + 1:],) + rest, (acc,) + ss)
            cost += c
        return acc, cost
    raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {e!r}")


# ---------------------------------------------------------------- bounds


def pol_b(e: BExpr) -> MPoly:
    """Polymax bound over the normal sizes.

    ``|e(x; y)| <= pol_b(e)(|x|) + max_i |y_i|`` for all arguments.
    """
    arity_b(e)
    _ensure_stack()
    return _pol_b(e, {})


def _pol_b(e, memo) -> MPoly:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, Zero):
        p = mpoly.constant(0, 0)
    elif isinstance(e, Proj):
        p = mpoly.variable(e.n, e.i) if e.i < e.n else mpoly.constant(e.n, 0)
    elif isinstance(e, Succ):
        p = mpoly.constant(0, 1)
    elif isinstance(e, (Pred, Cond)):
        p = mpoly.constant(0, 0)
    elif isinstance(e, Comp):
        head = mpoly.compose(_pol_b(e.h, memo), [_pol_b(g, memo) for g in e.gN], e.n)
        p = mpoly.sum_polys([head] + [_pol_b(g, memo) for g in e.gS], e.n)
    elif isinstance(e, Rec):
        steps = _pol_b(e.h0, memo) + _pol_b(e.h1, memo)
        x0 = mpoly.variable(steps.num_vars, 0)
        p = mpoly.shift(_pol_b(e.g, memo)) + x0 * steps
    else:
        raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {e!r}")
    memo[key] = p
    return p


def pol_time(e: BExpr) -> MPoly:
    """Upper bound on :func:`eval_b_timed` cost, over the normal sizes only."""
    arity_b(e)
    _ensure_stack()
    return _pol_time(e, {}, {})


def _pol_time(e, memo, bmemo) -> MPoly:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, (Zero, Succ, Pred, Cond)):
        p = mpoly.constant(0, 1)
    elif isinstance(e, Proj):
        p = mpoly.constant(e.n, 1)
    elif isinstance(e, Comp):
        head = mpoly.compose(_pol_time(e.h, memo, bmemo), [_pol_b(g, bmemo) for g in e.gN], e.n)
        args = [_pol_time(g, memo, bmemo) for g in e.gN + e.gS]
        p = mpoly.sum_polys([head] + args, e.n)
    elif isinstance(e, Rec):
        steps = _pol_time(e.h0, memo, bmemo) + _pol_time(e.h1, memo, bmemo)
        x0 = mpoly.variable(steps.num_vars, 0)
        p = mpoly.shift(_pol_time(e.g, memo, bmemo)) + x0 * steps
    else:
        raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {e!r}")
    memo[key] = p
    return p


def ppt_envelope(e: BExpr) -> Tuple[UPoly, UPoly]:
    """Univariate size and time envelopes ``(1 + 2*[pol_b], [pol_time])``.

    Apply them to an input size bound ``p`` with :meth:`UPoly.compose`.
    """
    size = UPoly((1,)) + mpoly.univariate_collapse(pol_b(e)).scale(2)
    time = mpoly.univariate_collapse(pol_time(e))
    return size, time


# ---------------------------------------------------------------- example programs

_PLUS_STEP = Comp(1, 2, Succ(1), (), (Proj(1, 1, 2),))
#: plus(x; y): y followed by |x| one-bits, so |plus(x; y)| = |x| + |y|.
PLUS = Rec(Proj(0, 0, 1), _PLUS_STEP, _PLUS_STEP)

_MULT_STEP = Comp(2, 1, PLUS, (Proj(1, 2, 0),), (Proj(2, 2, 1),))
#: mult(x, y;) with |mult(x, y;)| = |x| * |y|.
MULT = Rec(Comp(1, 0, Zero(), (), ()), _MULT_STEP, _MULT_STEP)


def zero_b(n: int, s: int = 0) -> BExpr:
    return Comp(n, s, Zero(), (), ())


def const_b(n: int, c: int) -> BExpr:
    """Arity ``(n, 0)`` expression returning ``1`` repeated ``c`` times."""
    e = zero_b(n)
    for _ in range(c):
        e = Comp(n, 0, Succ(1), (), (e,))
    return e


def poly_to_b(p: MPoly) -> BExpr:
    """Arity ``(p.num_vars, 0)`` expression whose output length is ``p(|x|)``."""
    n = p.num_vars
    summands = []
    constant_term = 0
    for exps, coef in p.terms:
        factors = [Proj(i, n, 0) for i, e in enumerate(exps) for _ in range(e)]
        if not factors:
            constant_term += coef
            continue
        mono = factors[0]
        for f in factors[1:]:
            mono = Comp(n, 0, MULT, (mono, f), ())
        term = mono
        for _ in range(coef - 1):
            term = Comp(n, 0, PLUS, (mono,), (term,))
        summands.append(term)
    if constant_term or not summands:
        summands.append(const_b(n, constant_term))
    total = summands[0]
    for s in summands[1:]:
        total = Comp(n, 0, PLUS, (s,), (total,))
    return total
