"""Multivariate polynomials with nonnegative integer coefficients.

Every length and running-time bound in the package is an :class:`MPoly`.
Nonnegative coefficients make each polynomial monotone in all of its
variables, which is what lets a bound at the maximal sizes cover all smaller
ones.

Polynomials are kept in a canonical form: a sparse list of monomials with no
zero coefficients, factors sorted by variable index, and monomials sorted by
:func:`monomial_order_key` (descending). Two polynomials are equal exactly
when their canonical forms are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import IndexOutOfRange, PolynomialError, VariableCountMismatch

__all__ = [
    "Monomial",
    "MPoly",
    "UPoly",
    "constant",
    "variable",
    "add",
    "mul",
    "compose",
    "inject",
    "shift",
    "evaluate",
    "univariate_collapse",
    "print_canonical",
    "sum_polys",
]

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class Monomial:
    coefficient: int
    factors: Tuple[Tuple[int, int], ...]


def monomial_order_key(exps: Exponents):
    """Sort key for the fixed total order on monomials.

    Higher total degree first; among equal degrees, monomials with fewer
    distinct variables first; remaining ties by lexicographic order of the
    exponent vector, ``x0`` most significant.
    """
    return (sum(exps), -sum(1 for e in exps if e), exps)


def _normalize(num_vars: int, terms: Dict[Exponents, int]) -> Tuple[Tuple[Exponents, int], ...]:
    items = [(e, c) for e, c in terms.items() if c != 0]
    for _, c in items:
        if c < 0:
            raise PolynomialError("coefficients must be nonnegative")
    items.sort(key=lambda item: monomial_order_key(item[0]), reverse=True)
    return tuple(items)


class MPoly:
    """Polynomial over variables ``x0 .. x{num_vars-1}``.

    ``terms`` maps dense exponent vectors to positive coefficients, stored as a
    tuple in canonical order.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Optional[Dict[Exponents, int]] = None):
        if num_vars < 0:
            raise PolynomialError("number of variables must be nonnegative")
        terms = dict(terms or {})
        for exps in terms:
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise PolynomialError(f"bad exponent vector {exps} for {num_vars} variables")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", _normalize(num_vars, terms))

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def from_monomials(cls, num_vars: int, monomials: Iterable) -> "MPoly":
        """Build from the sparse ``(coefficient, [(var, power), ...])`` listing.

        >>> print(MPoly.from_monomials(2, [(3, [(1, 3)]), (5, [(0, 2), (1, 1)]), (16, [])]))
        3*x1^3 + 5*x0^2*x1 + 16
        """
        acc: Dict[Exponents, int] = {}
        for coef, factors in monomials:
            exps = [0] * num_vars
            for var, power in factors:
                if not 0 <= var < num_vars:
                    raise IndexOutOfRange(f"variable x{var} out of range for {num_vars} variables")
                if power < 1:
                    raise PolynomialError("powers must be positive")
                exps[var] += power
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + coef
        return cls(num_vars, acc)

    @property
    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(
            Monomial(c, tuple((i, e) for i, e in enumerate(exps) if e)) for exps, c in self.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, self.terms))

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __call__(self, *values):
        return evaluate(self, values)

    def __str__(self):
        return print_canonical(self)

    def __repr__(self):
        listing = [(m.coefficient, list(m.factors)) for m in self.monomials]
        return f"MPoly.from_monomials({self.num_vars}, {listing})"


def constant(n_vars: int, c: int) -> MPoly:
    if c < 0:
        raise PolynomialError("constants must be nonnegative")
    return MPoly(n_vars, {(0,) * n_vars: c})


def variable(n_vars: int, i: int) -> MPoly:
    if not 0 <= i < n_vars:
        raise IndexOutOfRange(f"variable x{i} out of range for {n_vars} variables")
    exps = [0] * n_vars
    exps[i] = 1
    return MPoly(n_vars, {tuple(exps): 1})


def _same_vars(p: MPoly, q: MPoly, op: str):
    if p.num_vars != q.num_vars:
        raise VariableCountMismatch(f"{op}: {p.num_vars} variables vs {q.num_vars}")


def add(p: MPoly, q: MPoly) -> MPoly:
    _same_vars(p, q, "add")
    acc = dict(p.terms)
    for exps, c in q.terms:
        acc[exps] = acc.get(exps, 0) + c
    return MPoly(p.num_vars, acc)


def sum_polys(polys: Iterable[MPoly], num_vars: int) -> MPoly:
    acc: Dict[Exponents, int] = {}
    for p in polys:
        if p.num_vars != num_vars:
            raise VariableCountMismatch(f"sum: {p.num_vars} variables vs {num_vars}")
        for exps, c in p.terms:
            acc[exps] = acc.get(exps, 0) + c
    return MPoly(num_vars, acc)


def mul(p: MPoly, q: MPoly) -> MPoly:
    _same_vars(p, q, "mul")
    acc: Dict[Exponents, int] = {}
    for e1, c1 in p.terms:
        for e2, c2 in q.terms:
            exps = tuple(a + b for a, b in zip(e1, e2))
            acc[exps] = acc.get(exps, 0) + c1 * c2
    return MPoly(p.num_vars, acc)


def _power(p: MPoly, k: int, cache: Dict[Tuple[int, int], MPoly], idx: int) -> MPoly:
    key = (idx, k)
    if key not in cache:
        if k == 1:
            cache[key] = p
        else:
            half = _power(p, k // 2, cache, idx)
            sq = mul(half, half)
            cache[key] = mul(sq, p) if k % 2 else sq
    return cache[key]


def compose(p: MPoly, qs: Sequence[MPoly], num_vars: Optional[int] = None) -> MPoly:
    """Substitute ``qs[i]`` for ``x_i`` in ``p``.

    ``num_vars`` fixes the variable count of the result; it is required when
    ``qs`` is empty and checked against ``qs`` otherwise.
    """
    if len(qs) != p.num_vars:
        raise VariableCountMismatch(
            f"compose: polynomial has {p.num_vars} variables, {len(qs)} substitutes given"
        )
    if num_vars is None:
        if not qs:
            raise VariableCountMismatch("compose: empty substitution needs an explicit variable count")
        num_vars = qs[0].num_vars
    for q in qs:
        if q.num_vars != num_vars:
            raise VariableCountMismatch(
                f"compose: substitute has {q.num_vars} variables, expected {num_vars}"
            )
    one = constant(num_vars, 1)
    cache: Dict[Tuple[int, int], MPoly] = {}
    acc: Dict[Exponents, int] = {}
    for exps, c in p.terms:
        term = one
        for i, e in enumerate(exps):
            if e:
                term = mul(term, _power(qs[i], e, cache, i))
        for texps, tc in term.terms:
            acc[texps] = acc.get(texps, 0) + c * tc
    return MPoly(num_vars, acc)


def inject(p: MPoly, n: int) -> MPoly:
    """View ``p`` as a polynomial over ``n >= p.num_vars`` variables."""
    if n < p.num_vars:
        raise VariableCountMismatch(f"inject: cannot shrink {p.num_vars} variables to {n}")
    pad = (0,) * (n - p.num_vars)
    return MPoly(n, {exps + pad: c for exps, c in p.terms})


def shift(p: MPoly) -> MPoly:
    """Rename every ``x_i`` to ``x_{i+1}``, adding a fresh unused ``x0``."""
    return MPoly(p.num_vars + 1, {(0,) + exps: c for exps, c in p.terms})


def evaluate(p: MPoly, values: Sequence[int]) -> int:
    if len(values) != p.num_vars:
        raise VariableCountMismatch(f"eval: {p.num_vars} variables, {len(values)} values given")
    total = 0
    for exps, c in p.terms:
        term = c
        for v, e in zip(values, exps):
            if e:
                term *= v**e
        total += term
    return total


def _render_monomial(c: int, factors, names) -> str:
    parts = [names(i) + (f"^{e}" if e > 1 else "") for i, e in factors]
    if not parts:
        return str(c)
    if c != 1:
        parts.insert(0, str(c))
    return "*".join(parts)


def print_canonical(p: MPoly) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(
        _render_monomial(m.coefficient, m.factors, lambda i: f"x{i}") for m in p.monomials
    )


@dataclass(frozen=True)
class UPoly:
    """Univariate polynomial, coefficients listed from the constant term up."""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coefficients)
        if any(c < 0 for c in coeffs):
            raise PolynomialError("coefficients must be nonnegative")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UPoly") -> "UPoly":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return UPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def scale(self, k: int) -> "UPoly":
        return UPoly(tuple(k * c for c in self.coefficients))

    def __mul__(self, other: "UPoly") -> "UPoly":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return UPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UPoly(tuple(out))

    def compose(self, inner: "UPoly") -> "UPoly":
        """Return ``self(inner(x))``; this is how an envelope is applied to a size bound ``p``."""
        acc = UPoly()
        for c in reversed(self.coefficients):
            acc = acc * inner + UPoly((c,))
        return acc

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for power in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            factors = [(0, power)] if power else []
            parts.append(_render_monomial(c, factors, lambda i: "x"))
        return " + ".join(parts)


def univariate_collapse(p: MPoly) -> UPoly:
    """Substitute one variable ``x`` for all of ``x0 .. x{n-1}``."""
    degree = p.degree()
    coeffs = [0] * (degree + 1)
    for exps, c in p.terms:
        coeffs[sum(exps)] += c
    return UPoly(tuple(coeffs))
