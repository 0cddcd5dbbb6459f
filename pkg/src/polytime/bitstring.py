"""Bitstrings, the value domain of both function algebras.

A :class:`Bitstring` stores its bits least-significant first, so peeling the
low bit (the step of every recursion on notation) is a slice from the front.
Literals are written most-significant first, the way numbers are read, with
``eps`` for the empty string.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple, Union

from .errors import MalformedLiteral

__all__ = [
    "Bitstring",
    "EPS",
    "append_lsb",
    "split_lsb",
    "length",
    "parse_literal",
    "render_literal",
    "as_bitstring",
    "as_args",
    "size_vector",
]


class Bitstring:
    """Immutable finite sequence of bits.

    ``raw`` holds the bits as a ``str`` of ``'0'``/``'1'`` characters with the
    least significant bit at index 0. Evaluators work directly on ``raw``.
    """

    __slots__ = ("raw",)

    def __init__(self, raw: str = ""):
        object.__setattr__(self, "raw", raw)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Bitstring":
        """Build from an iterable of bits, least significant first."""
        out = []
        for b in bits:
            if b not in (0, 1):
                raise MalformedLiteral(f"not a bit: {b!r}")
            out.append("1" if b else "0")
        return cls("".join(out))

    def __setattr__(self, name, value):
        raise AttributeError("Bitstring is immutable")

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple(1 if c == "1" else 0 for c in self.raw)

    def __len__(self) -> int:
        return len(self.raw)

    def __eq__(self, other) -> bool:
        if isinstance(other, Bitstring):
            return self.raw == other.raw
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Bitstring", self.raw))

    def __repr__(self) -> str:
        return f"Bitstring({render_literal(self)!r})"

    def __str__(self) -> str:
        return render_literal(self)

    def __reduce__(self):
        return (Bitstring, (self.raw,))


EPS = Bitstring("")


def append_lsb(x: Bitstring, b: int) -> Bitstring:
    """Return ``xb``: ``x`` shifted up one position with ``b`` as the new low bit."""
    if b not in (0, 1):
        raise MalformedLiteral(f"not a bit: {b!r}")
    return Bitstring(("1" if b else "0") + x.raw)


def split_lsb(x: Bitstring) -> Optional[Tuple[Bitstring, int]]:
    """Inverse of :func:`append_lsb`; ``None`` for the empty string."""
    if not x.raw:
        return None
    return Bitstring(x.raw[1:]), 1 if x.raw[0] == "1" else 0


def length(x: Bitstring) -> int:
    return len(x.raw)


def parse_literal(text: str) -> Bitstring:
    if text in ("", "eps"):
        return EPS
    if any(c not in "01" for c in text):
        raise MalformedLiteral(f"malformed bitstring literal: {text!r}")
    return Bitstring(text[::-1])


def render_literal(x: Bitstring) -> str:
    return x.raw[::-1] if x.raw else "eps"


def as_bitstring(value: Union[Bitstring, str]) -> Bitstring:
    """Accept either a :class:`Bitstring` or a literal string."""
    if isinstance(value, Bitstring):
        return value
    if isinstance(value, str):
        return parse_literal(value)
    raise TypeError(f"expected Bitstring or literal, got {type(value).__name__}")


def as_args(values: Sequence[Union[Bitstring, str]]) -> Tuple[Bitstring, ...]:
    return tuple(as_bitstring(v) for v in values)


def size_vector(args: Sequence[Bitstring]) -> Tuple[int, ...]:
    return tuple(len(a) for a in args)
