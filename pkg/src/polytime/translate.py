"""Compilers between the two classes.

``b_to_c`` maps a B expression to a C expression computing the same function
on the flattened argument list, synthesizing the recursion bounds C needs.

``c_to_b_padded`` goes the other way under a padding argument: the result
takes one extra normal argument ``w`` and is correct as soon as ``|w|``
reaches :func:`pol_c_to_b` of the source. ``c_to_b_closed`` removes the
padding by computing ``w`` inside B with an exact unary encoding of that
threshold polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from . import bellantoni as B
from . import cobham as C
from . import mpoly
from .cobham import _ensure_stack
from .errors import IllFormed
from .mpoly import MPoly

__all__ = [
    "SimulationResult",
    "c_dummies",
    "move_arg",
    "b_to_c",
    "pol_c_to_b",
    "c_to_b_padded",
    "c_to_b_closed",
    "padding_function",
    "build_P",
    "build_Pprime",
    "build_Y",
    "build_fhat",
    "build_fprime",
    "build_smash_b",
    "b_dummies",
    "ONE",
    "SMASH_PADDING",
]


# ---------------------------------------------------------------- B -> C


def c_dummies(s: int, e: C.CExpr) -> C.CExpr:
    """Extend ``e`` with ``s`` trailing arguments that it ignores."""
    if s == 0:
        return e
    n = C.arity_c(e)
    return C.Comp(n + s, e, tuple(C.Proj(i, n + s) for i in range(n)))


def move_arg(e: C.CExpr, n: int) -> C.CExpr:
    """Present C's step layout ``(y, r, x1..xn, rest)`` to ``e`` as ``(y, x1..xn, r, rest)``.

    ``n`` is the number of normal arguments besides the recursion argument;
    ``n == 0`` needs no reordering.
    """
    if n == 0:
        return e
    a = C.arity_c(e)
    if a < n + 2:
        raise IllFormed("move_arg", f"arity {a} is too small to move argument {n + 1}")
    order = [0] + list(range(2, n + 2)) + [1] + list(range(n + 2, a))
    return C.Comp(a, e, tuple(C.Proj(i, a) for i in order))


PRED_C = C.Rec(C.O(), C.Proj(0, 2), C.Proj(0, 2), C.Proj(0, 1))


def _cond_c() -> C.CExpr:
    def s1(i):
        return C.Comp(4, C.Succ(1), (C.Proj(i, 4),))

    bound = C.Comp(4, C.Smash(), (s1(1), C.Comp(4, C.Smash(), (s1(2), s1(3)))))
    # h_b receives (w', r, x, y, z): an even scrutinee selects y, an odd one z.
    return C.Rec(C.Proj(0, 3), C.Proj(3, 5), C.Proj(4, 5), bound)


COND_C = _cond_c()


def b_to_c(e: B.BExpr) -> C.CExpr:
    """C expression with ``eval_c(b_to_c(e), x + y) == eval_b(e, x, y)``."""
    B.arity_b(e)
    _ensure_stack()
    return _b_to_c(e, {})


def _b_to_c(e, memo) -> C.CExpr:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, B.Zero):
        r = C.O()
    elif isinstance(e, B.Proj):
        r = C.Proj(e.i, e.n + e.s)
    elif isinstance(e, B.Succ):
        r = C.Succ(e.b)
    elif isinstance(e, B.Pred):
        r = PRED_C
    elif isinstance(e, B.Cond):
        r = COND_C
    elif isinstance(e, B.Comp):
        gs = [c_dummies(e.s, _b_to_c(g, memo)) for g in e.gN]
        gs += [_b_to_c(g, memo) for g in e.gS]
        r = C.Comp(e.n + e.s, _b_to_c(e.h, memo), tuple(gs))
    elif isinstance(e, B.Rec):
        n, s = B.arity_b(e)
        bound = mpoly.inject(B.pol_b(e), n + s)
        for k in range(n, n + s):
            bound = bound + mpoly.variable(n + s, k)
        r = C.Rec(
            _b_to_c(e.g, memo),
            move_arg(_b_to_c(e.h0, memo), n - 1),
            move_arg(_b_to_c(e.h1, memo), n - 1),
            C.poly_to_c(bound),
        )
    else:
        raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {e!r}")
    memo[key] = r
    return r


# ---------------------------------------------------------------- C -> B helpers


def build_P() -> B.BExpr:
    """``P(a; b)``: ``b`` with its ``|a|`` low bits removed."""
    step = B.Comp(1, 2, B.Pred(), (), (B.Proj(1, 1, 2),))
    return B.Rec(B.Proj(0, 0, 1), step, step)


def build_Pprime() -> B.BExpr:
    """``P'(a, b;) = P(a; b)``, with both arguments normal."""
    return B.Comp(2, 0, P, (B.Proj(0, 2, 0),), (B.Proj(1, 2, 0),))


def build_Y() -> B.BExpr:
    """``Y(z, w; y)``: ``y`` with its ``|w| - |z|`` low bits removed."""
    return B.Comp(2, 1, P, (Pprime,), (B.Proj(2, 2, 1),))


P = build_P()
Pprime = build_Pprime()
Y = build_Y()


def build_fhat(gp: B.BExpr, h0p: B.BExpr, h1p: B.BExpr, m: int) -> B.BExpr:
    """Recursion on a prefix ``z`` of the padding, simulating a C recursion.

    ``gp`` has arity ``(1, m)`` and ``h0p``/``h1p`` arity ``(1, m + 2)``; they are
    the padded images of a C recursion ``Rec g h0 h1 j`` whose base has arity
    ``m``. The result ``fhat(z, w; y, x)`` has arity ``(2, m + 1)`` and, once
    ``w`` is long enough, equals the C recursion on ``Y(z, w; y)``::

        fhat(eps, w; y, x) = g'(w; x)
        fhat(zb, w; y, x)  = cond(; Y(s1 z, w; y),
                                    g'(w; x),
                                    h0'(w; Y(z, w; y), fhat(z, w; y, x), x),
                                    h1'(w; Y(z, w; y), fhat(z, w; y, x), x))
    """
    k = 2 + m
    xs_h = tuple(B.Proj(4 + i, 2, k) for i in range(m))
    base = B.Comp(1, 1 + m, gp, (B.Proj(0, 1, 0),), tuple(B.Proj(2 + i, 1, 1 + m) for i in range(m)))
    z, w = B.Proj(0, 2, 0), B.Proj(1, 2, 0)
    y = B.Proj(3, 2, k)
    s1z = B.Comp(2, 0, B.Succ(1), (), (z,))
    scrutinee = B.Comp(2, k, Y, (s1z, w), (y,))
    y_here = B.Comp(2, k, Y, (z, w), (y,))
    on_eps = B.Comp(2, k, gp, (w,), xs_h)

    def branch(hp):
        return B.Comp(2, k, hp, (w,), (y_here, B.Proj(2, 2, k)) + xs_h)

    step = B.Comp(2, k, B.Cond(), (), (scrutinee, on_eps, branch(h0p), branch(h1p)))
    return B.Rec(base, step, step)


def build_fprime(gp: B.BExpr, h0p: B.BExpr, h1p: B.BExpr, m: int) -> B.BExpr:
    """``f'(w; y, x) = fhat(w, w; y, x)``, arity ``(1, m + 1)``."""
    fhat = build_fhat(gp, h0p, h1p, m)
    w = B.Proj(0, 1, 0)
    return B.Comp(1, 1 + m, fhat, (w, w), tuple(B.Proj(1 + i, 1, 1 + m) for i in range(1 + m)))


def b_dummies(e: B.BExpr, dn: int, ds: int) -> B.BExpr:
    """Add ``dn`` leading normal and ``ds`` leading safe arguments that ``e`` ignores."""
    if dn == 0 and ds == 0:
        return e
    n, s = B.arity_b(e)
    N, S = n + dn, s + ds
    return B.Comp(
        N,
        S,
        e,
        tuple(B.Proj(dn + i, N, 0) for i in range(n)),
        tuple(B.Proj(N + ds + i, N, S) for i in range(s)),
    )


#: ``one(w; y) = 1``.
ONE = B.Comp(1, 1, B.Succ(1), (), (B.Comp(1, 1, B.Zero(), (), ()),))


def build_smash_b() -> B.BExpr:
    """Padded smash of arity ``(1, 2)``, built by two nested simulations.

    First ``#'(x, y)`` (``y`` followed by ``|x|`` zero bits), then
    ``#(eps, y) = 1`` and ``#(xb, y) = #'(y, #(x, y))``.
    """
    shift_in = build_fprime(
        B.Proj(1, 1, 1),
        B.Comp(1, 3, B.Succ(0), (), (B.Proj(2, 1, 3),)),
        B.Comp(1, 3, B.Succ(0), (), (B.Proj(2, 1, 3),)),
        1,
    )
    swapped = B.Comp(1, 2, shift_in, (B.Proj(0, 1, 0),), (B.Proj(2, 1, 2), B.Proj(1, 1, 2)))
    step = b_dummies(swapped, 0, 1)
    return build_fprime(ONE, step, step, 1)


SMASH_B = build_smash_b()

#: Padding threshold of :data:`SMASH_B`. The construction above
#: needs only ``x0 + 2*x1 + 6`` by the same recurrence, so this is safe.
SMASH_PADDING = MPoly.from_monomials(2, [(1, [(0, 1)]), (2, [(1, 1)]), (18, [])])


# ---------------------------------------------------------------- C -> B


@dataclass(frozen=True)
class SimulationResult:
    """Padded translation: ``eval_b(expr, [w], x) == eval_c(source, x)`` when ``|w| >= bound(|x|)``."""

    expr: B.BExpr
    bound: MPoly


def pol_c_to_b(e: C.CExpr) -> MPoly:
    """Padding length sufficient for :func:`c_to_b_padded` of ``e``."""
    C.arity_c(e)
    _ensure_stack()
    return _pol_c_to_b(e, {})


def _pol_c_to_b(e, memo) -> MPoly:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, C.O):
        p = mpoly.constant(0, 0)
    elif isinstance(e, C.Proj):
        p = mpoly.constant(e.n, 0)
    elif isinstance(e, C.Succ):
        p = mpoly.constant(1, 0)
    elif isinstance(e, C.Smash):
        p = SMASH_PADDING
    elif isinstance(e, C.Comp):
        head = mpoly.compose(_pol_c_to_b(e.h, memo), [C.pol_c(g) for g in e.gs], e.n)
        p = mpoly.sum_polys([head] + [_pol_c_to_b(g, memo) for g in e.gs], e.n)
    elif isinstance(e, C.Rec):
        n = C.arity_c(e)
        steps = _pol_c_to_b(e.h0, memo) + _pol_c_to_b(e.h1, memo)
        # step variables are (prefix, recursive value, rest); the recursive
        # value is bounded by the length bound of the whole recursion.
        subst = [mpoly.variable(n, 0), C.pol_c(e.j)] + [mpoly.variable(n, i) for i in range(1, n)]
        p = mpoly.sum_polys(
            [
                mpoly.compose(steps, subst, n),
                mpoly.shift(_pol_c_to_b(e.g, memo)),
                mpoly.variable(n, 0),
                mpoly.constant(n, 2),
            ],
            n,
        )
    else:
        raise IllFormed("syntax", f"not a Cobham expression: {e!r}")
    memo[key] = p
    return p


def c_to_b_padded(e: C.CExpr) -> SimulationResult:
    """Translate ``e`` of arity ``n`` to a B expression of arity ``(1, n)``.

    Correctness relies on ``e`` satisfying RecBounded, which is not checked.
    """
    C.arity_c(e)
    _ensure_stack()
    return SimulationResult(_c_to_b(e, {}), pol_c_to_b(e))


def _c_to_b(e, memo) -> B.BExpr:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, C.O):
        r = B.Comp(1, 0, B.Zero(), (), ())
    elif isinstance(e, C.Proj):
        r = B.Proj(e.i + 1, 1, e.n)
    elif isinstance(e, C.Succ):
        r = B.Comp(1, 1, B.Succ(e.b), (), (B.Proj(1, 1, 1),))
    elif isinstance(e, C.Smash):
        r = SMASH_B
    elif isinstance(e, C.Comp):
        r = B.Comp(1, e.n, _c_to_b(e.h, memo), (B.Proj(0, 1, 0),), tuple(_c_to_b(g, memo) for g in e.gs))
    elif isinstance(e, C.Rec):
        m = C.arity_c(e.g)
        r = build_fprime(_c_to_b(e.g, memo), _c_to_b(e.h0, memo), _c_to_b(e.h1, memo), m)
    else:
        raise IllFormed("syntax", f"not a Cobham expression: {e!r}")
    memo[key] = r
    return r


def padding_function(e: C.CExpr) -> B.BExpr:
    """``b_f``: arity ``(n, 0)``, output length exactly ``pol_c_to_b(e)(|x|)``."""
    return B.poly_to_b(pol_c_to_b(e))


def c_to_b_closed(e: C.CExpr) -> B.BExpr:
    """B expression of arity ``(n, 0)`` with ``eval_b(result, x) == eval_c(e, x)``."""
    n = C.arity_c(e)
    sim = c_to_b_padded(e)
    pad = B.poly_to_b(sim.bound)
    return B.Comp(n, 0, sim.expr, (pad,), tuple(B.Proj(i, n, 0) for i in range(n)))
