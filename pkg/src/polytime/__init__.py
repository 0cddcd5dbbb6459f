"""Deep embeddings of Cobham's class C and Bellantoni-Cook's class B.

Both classes describe the polynomial-time functions over bitstrings. The
package evaluates their expressions, derives length and time bounding
polynomials, and translates expressions between the two classes.
"""

from .bitstring import Bitstring, EPS, parse_literal, render_literal
from .errors import (
    ArgumentMismatch,
    BoundViolation,
    IllFormed,
    InferenceError,
    MalformedLiteral,
    ParseError,
    PolytimeError,
    UnknownName,
)
from .mpoly import MPoly, UPoly, print_canonical

__version__ = "0.1.0"

__all__ = [
    "Bitstring",
    "EPS",
    "parse_literal",
    "render_literal",
    "MPoly",
    "UPoly",
    "print_canonical",
    "PolytimeError",
    "MalformedLiteral",
    "IllFormed",
    "ArgumentMismatch",
    "BoundViolation",
    "InferenceError",
    "UnknownName",
    "ParseError",
]
