"""Arity-free Bellantoni-Cook syntax and arity inference.

In this syntax projections say only whether they read a normal or a safe
argument (``ProjN(i)`` / ``ProjS(i)``) and compositions carry no ``(n, s)``.
:func:`infer` recovers the pointwise smallest annotation that satisfies the
arity rules, optionally raised to a floor at the root.

Inference is a constraint problem over two independent integer systems, one
for normal counts and one for safe counts. Every rule is either an equation
``a = b + k``, a fixed value, or a lower bound, so a union-find with offsets
solves it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import bellantoni as B
from .bellantoni import BArity
from .cobham import _ensure_stack
from .errors import IllFormed, InferenceError, format_path

__all__ = [
    "BInfExpr",
    "Zero",
    "ProjN",
    "ProjS",
    "Succ",
    "Pred",
    "Cond",
    "Comp",
    "Rec",
    "infer",
    "erase",
]


class BInfExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(BInfExpr):
    pass


@dataclass(frozen=True)
class ProjN(BInfExpr):
    i: int


@dataclass(frozen=True)
class ProjS(BInfExpr):
    i: int


@dataclass(frozen=True)
class Succ(BInfExpr):
    b: int


@dataclass(frozen=True)
class Pred(BInfExpr):
    pass


@dataclass(frozen=True)
class Cond(BInfExpr):
    pass


@dataclass(frozen=True)
class Comp(BInfExpr):
    h: BInfExpr
    gN: Tuple[BInfExpr, ...]
    gS: Tuple[BInfExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "gN", tuple(self.gN))
        object.__setattr__(self, "gS", tuple(self.gS))


@dataclass(frozen=True)
class Rec(BInfExpr):
    g: BInfExpr
    h0: BInfExpr
    h1: BInfExpr


_FIXED = {Zero: (0, 0), Succ: (0, 1), Pred: (0, 1), Cond: (0, 4)}


class _System:
    """Integer variables linked by offset equations, fixed values and lower bounds."""

    def __init__(self, name):
        self.name = name
        self.parent: List[int] = []
        self.offset: List[int] = []  # value(v) = value(parent[v]) + offset[v]
        self.fixed: Dict[int, Tuple[int, str]] = {}
        self.lower: Dict[int, Tuple[int, str]] = {}

    def new(self) -> int:
        self.parent.append(len(self.parent))
        self.offset.append(0)
        return len(self.parent) - 1

    def find(self, v) -> Tuple[int, int]:
        off = 0
        path = []
        while self.parent[v] != v:
            path.append(v)
            off += self.offset[v]
            v = self.parent[v]
        root = v
        # path compression
        acc = off
        for u in path:
            step = self.offset[u]
            self.parent[u] = root
            self.offset[u] = acc
            acc -= step
        return root, off

    def _fix_root(self, root, value, why):
        if root in self.fixed and self.fixed[root][0] != value:
            prev, prev_why = self.fixed[root]
            raise InferenceError(
                f"{self.name} count forced to {prev} by {prev_why} and to {value} by {why}"
            )
        self.fixed[root] = (value, why)

    def _bound_root(self, root, value, why):
        if root not in self.lower or self.lower[root][0] < value:
            self.lower[root] = (value, why)

    def equate(self, a, b, k, why):
        """Impose ``value(a) = value(b) + k``."""
        ra, oa = self.find(a)
        rb, ob = self.find(b)
        if ra == rb:
            if oa != ob + k:
                raise InferenceError(f"inconsistent {self.name} counts at {why}")
            return
        # value(ra) = value(rb) + ob + k - oa
        delta = ob + k - oa
        self.parent[ra] = rb
        self.offset[ra] = delta
        if ra in self.fixed:
            value, fwhy = self.fixed.pop(ra)
            self._fix_root(rb, value - delta, fwhy)
        if ra in self.lower:
            value, lwhy = self.lower.pop(ra)
            self._bound_root(rb, value - delta, lwhy)

    def fix(self, v, value, why):
        root, off = self.find(v)
        self._fix_root(root, value - off, why)

    def at_least(self, v, value, why):
        root, off = self.find(v)
        self._bound_root(root, value - off, why)

    def solve(self) -> List[int]:
        for v in range(len(self.parent)):
            self.at_least(v, 0, "nonnegativity")
        roots = {}
        for v in range(len(self.parent)):
            root, _ = self.find(v)
            if root in roots:
                continue
            low, low_why = self.lower.get(root, (0, "nonnegativity"))
            if root in self.fixed:
                value, why = self.fixed[root]
                if value < low:
                    raise InferenceError(
                        f"{self.name} count fixed to {value} by {why}, but {low_why} needs at least {low}"
                    )
                roots[root] = value
            else:
                roots[root] = low
        return [roots[self.find(v)[0]] + self.find(v)[1] for v in range(len(self.parent))]


def infer(e: BInfExpr, floor: Optional[Tuple[int, int]] = None) -> B.BExpr:
    """Annotate ``e`` with the pointwise minimal arities.

    ``floor`` raises the root arity to at least the given ``(normal, safe)``.
    Raises :class:`InferenceError` when no annotation exists.
    """
    _ensure_stack()
    normal = _System("normal")
    safe = _System("safe")
    nodes: List[Tuple[BInfExpr, Tuple[str, ...], int, int]] = []

    def where(path):
        return format_path(path)

    def visit(t, path) -> int:
        idx = len(nodes)
        vn, vs = normal.new(), safe.new()
        nodes.append((t, path, vn, vs))
        here = where(path)
        if type(t) in _FIXED:
            fn, fs = _FIXED[type(t)]
            normal.fix(vn, fn, f"{type(t).__name__.lower()} at {here}")
            safe.fix(vs, fs, f"{type(t).__name__.lower()} at {here}")
        elif isinstance(t, ProjN):
            normal.at_least(vn, t.i + 1, f"normal projection {t.i} at {here}")
        elif isinstance(t, ProjS):
            safe.at_least(vs, t.i + 1, f"safe projection {t.i} at {here}")
        elif isinstance(t, Comp):
            hi = visit(t.h, path + ("h",))
            normal.fix(nodes[hi][2], len(t.gN), f"head of comp at {here}")
            safe.fix(nodes[hi][3], len(t.gS), f"head of comp at {here}")
            for k, g in enumerate(t.gN):
                gi = visit(g, path + (f"gN[{k}]",))
                normal.equate(nodes[gi][2], vn, 0, f"gN[{k}] of comp at {here}")
                safe.fix(nodes[gi][3], 0, f"normal argument gN[{k}] of comp at {here}")
            for k, g in enumerate(t.gS):
                gi = visit(g, path + (f"gS[{k}]",))
                normal.equate(nodes[gi][2], vn, 0, f"gS[{k}] of comp at {here}")
                safe.equate(nodes[gi][3], vs, 0, f"gS[{k}] of comp at {here}")
        elif isinstance(t, Rec):
            gi = visit(t.g, path + ("g",))
            normal.equate(nodes[gi][2], vn, -1, f"base of rec at {here}")
            safe.equate(nodes[gi][3], vs, 0, f"base of rec at {here}")
            for sel in ("h0", "h1"):
                hi = visit(getattr(t, sel), path + (sel,))
                normal.equate(nodes[hi][2], vn, 0, f"{sel} of rec at {here}")
                safe.equate(nodes[hi][3], vs, 1, f"{sel} of rec at {here}")
        else:
            raise InferenceError(f"not an arity-free expression: {t!r}", path)
        return idx

    try:
        visit(e, ())
        if floor is not None:
            normal.at_least(nodes[0][2], floor[0], "the requested floor")
            safe.at_least(nodes[0][3], floor[1], "the requested floor")
        ns = normal.solve()
        ss = safe.solve()
    except InferenceError:
        raise
    except RecursionError as exc:  # pragma: no cover - pathological depth
        raise InferenceError(str(exc)) from exc

    cursor = iter(range(len(nodes)))

    def build(t) -> B.BExpr:
        idx = next(cursor)
        _, _, vn, vs = nodes[idx]
        n, s = ns[vn], ss[vs]
        if isinstance(t, Zero):
            return B.Zero()
        if isinstance(t, Succ):
            return B.Succ(t.b)
        if isinstance(t, Pred):
            return B.Pred()
        if isinstance(t, Cond):
            return B.Cond()
        if isinstance(t, ProjN):
            return B.Proj(t.i, n, s)
        if isinstance(t, ProjS):
            return B.Proj(n + t.i, n, s)
        if isinstance(t, Comp):
            h = build(t.h)
            gN = tuple(build(g) for g in t.gN)
            gS = tuple(build(g) for g in t.gS)
            return B.Comp(n, s, h, gN, gS)
        g = build(t.g)
        h0 = build(t.h0)
        h1 = build(t.h1)
        return B.Rec(g, h0, h1)

    return build(e)


def erase(e: B.BExpr) -> BInfExpr:
    """Drop all arity annotations from a well-formed expression."""
    B.arity_b(e)
    _ensure_stack()
    memo: Dict[int, BInfExpr] = {}

    def go(t):
        key = id(t)
        if key in memo:
            return memo[key]
        if isinstance(t, B.Zero):
            r = Zero()
        elif isinstance(t, B.Succ):
            r = Succ(t.b)
        elif isinstance(t, B.Pred):
            r = Pred()
        elif isinstance(t, B.Cond):
            r = Cond()
        elif isinstance(t, B.Proj):
            r = ProjN(t.i) if t.i < t.n else ProjS(t.i - t.n)
        elif isinstance(t, B.Comp):
            r = Comp(go(t.h), tuple(go(g) for g in t.gN), tuple(go(g) for g in t.gS))
        elif isinstance(t, B.Rec):
            r = Rec(go(t.g), go(t.h0), go(t.h1))
        else:
            raise IllFormed("syntax", f"not a Bellantoni-Cook expression: {t!r}")
        memo[key] = r
        return r

    return go(e)


def inferred_arity(e: BInfExpr, floor=None) -> BArity:
    return B.arity_b(infer(e, floor))
