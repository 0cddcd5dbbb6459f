"""Concrete s-expression syntax for C, B and arity-free B programs.

A program is a sequence of ``(def NAME expr)`` forms optionally followed by
one main expression. Identifiers refer to earlier definitions or to stdlib
entries of the same class and are inlined at parse time. ``;`` starts a
comment running to the end of the line.

C::   O | (proj i n) | (succ b) | smash | (comp n h (g ...)) | (rec g h0 h1 j)
B::   zero | (pi i n s) | (succ b) | pred | cond
      | (comp n s h (gN ...) (gS ...)) | (rec g h0 h1)
B_inf: as B, with (pn i) / (ps i) for projections and (comp h (gN ...) (gS ...))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from . import bellantoni as B
from . import binf as I
from . import cobham as C
from . import stdlib
from .errors import ParseError

__all__ = [
    "SourceLocation",
    "Program",
    "parse_source",
    "normalize_class",
    "to_source",
]

CLASSES = ("C", "B", "B_inf")
_ALIASES = {"c": "C", "b": "B", "binf": "B_inf", "b_inf": "B_inf", "b-inf": "B_inf"}


def normalize_class(name: str) -> str:
    if name in CLASSES:
        return name
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ParseError(f"unknown class {name!r}; expected one of c, b, binf") from None


@dataclass(frozen=True)
class SourceLocation:
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass
class _Atom:
    text: str
    loc: SourceLocation


@dataclass
class _List:
    items: List[Union["_Atom", "_List"]]
    loc: SourceLocation


@dataclass
class Program:
    cls: str
    defs: List[Tuple[str, str, object]] = field(default_factory=list)
    main: Optional[object] = None
    locations: Dict[int, SourceLocation] = field(default_factory=dict, repr=False)

    def location_of(self, term) -> Optional[SourceLocation]:
        return self.locations.get(id(term))


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def _read(text: str) -> List[Union[_Atom, _List]]:
    stack: List[_List] = [_List([], SourceLocation(1, 1))]
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        loc = SourceLocation(line, m.start() - line_start + 1)
        if tok[0].isspace() or tok[0] == ";":
            newlines = tok.count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + tok.rindex("\n") + 1
            continue
        if tok == "(":
            stack.append(_List([], loc))
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", loc.line, loc.column)
            done = stack.pop()
            stack[-1].items.append(done)
        else:
            stack[-1].items.append(_Atom(tok, loc))
    if len(stack) > 1:
        loc = stack[-1].loc
        raise ParseError("unclosed '('", loc.line, loc.column)
    return stack[0].items


_C_KEYWORDS = {"O", "proj", "succ", "smash", "comp", "rec", "def"}
_B_KEYWORDS = {"zero", "pi", "pn", "ps", "succ", "pred", "cond", "comp", "rec", "def"}


class _Parser:
    def __init__(self, cls: str):
        self.cls = cls
        self.env: Dict[str, object] = {}
        self.locations: Dict[int, SourceLocation] = {}

    def fail(self, node, message):
        raise ParseError(message, node.loc.line, node.loc.column)

    def nat(self, node) -> int:
        if not isinstance(node, _Atom) or not node.text.isdigit():
            self.fail(node, f"expected a natural number, got {_show(node)}")
        return int(node.text)

    def bit(self, node) -> int:
        if not isinstance(node, _Atom) or node.text not in ("0", "1"):
            self.fail(node, f"expected a bit 0 or 1, got {_show(node)}")
        return int(node.text)

    def seq(self, node) -> tuple:
        if not isinstance(node, _List):
            self.fail(node, f"expected a parenthesized list of expressions, got {_show(node)}")
        return tuple(self.expr(item) for item in node.items)

    def arity(self, node, head, count):
        if len(node.items) - 1 != count:
            self.fail(node, f"'{head}' takes {count} arguments, got {len(node.items) - 1}")

    def record(self, node, term):
        self.locations.setdefault(id(term), node.loc)
        return term

    def identifier(self, node):
        name = node.text
        if name in self.env:
            return self.env[name]
        try:
            d = stdlib.lookup(name)
        except KeyError:
            self.fail(node, f"unknown identifier {name!r}")
        want = "C" if self.cls == "C" else "B"
        if d.cls != want:
            self.fail(node, f"class mismatch: {name!r} is a {d.cls} definition, this is a {self.cls} program")
        return I.erase(d.expr) if self.cls == "B_inf" else d.expr

    def expr(self, node):
        if isinstance(node, _Atom):
            return self.record(node, self.atom(node))
        if not node.items or not isinstance(node.items[0], _Atom):
            self.fail(node, "expected an expression form")
        head = node.items[0].text
        args = node.items[1:]
        return self.record(node, self.form(node, head, args))

    def atom(self, node):
        t = node.text
        if self.cls == "C":
            if t == "O":
                return C.O()
            if t == "smash":
                return C.Smash()
        else:
            mod = B if self.cls == "B" else I
            if t == "zero":
                return mod.Zero()
            if t == "pred":
                return mod.Pred()
            if t == "cond":
                return mod.Cond()
        if t in _C_KEYWORDS | _B_KEYWORDS or t.isdigit():
            self.fail(node, f"{t!r} is not an expression in class {self.cls}")
        return self.identifier(node)

    def form(self, node, head, args):
        if head == "succ":
            self.arity(node, head, 1)
            b = self.bit(args[0])
            return C.Succ(b) if self.cls == "C" else (B.Succ(b) if self.cls == "B" else I.Succ(b))
        if head == "rec":
            if self.cls == "C":
                self.arity(node, head, 4)
                return C.Rec(*(self.expr(a) for a in args))
            self.arity(node, head, 3)
            mod = B if self.cls == "B" else I
            return mod.Rec(*(self.expr(a) for a in args))
        if self.cls == "C":
            if head == "proj":
                self.arity(node, head, 2)
                return C.Proj(self.nat(args[0]), self.nat(args[1]))
            if head == "comp":
                self.arity(node, head, 3)
                return C.Comp(self.nat(args[0]), self.expr(args[1]), self.seq(args[2]))
        elif self.cls == "B":
            if head == "pi":
                self.arity(node, head, 3)
                return B.Proj(self.nat(args[0]), self.nat(args[1]), self.nat(args[2]))
            if head == "comp":
                self.arity(node, head, 5)
                return B.Comp(
                    self.nat(args[0]), self.nat(args[1]), self.expr(args[2]), self.seq(args[3]), self.seq(args[4])
                )
        else:
            if head == "pn":
                self.arity(node, head, 1)
                return I.ProjN(self.nat(args[0]))
            if head == "ps":
                self.arity(node, head, 1)
                return I.ProjS(self.nat(args[0]))
            if head == "comp":
                self.arity(node, head, 3)
                return I.Comp(self.expr(args[0]), self.seq(args[1]), self.seq(args[2]))
        self.fail(node, f"unknown form {head!r} in class {self.cls}")


def _show(node) -> str:
    if isinstance(node, _Atom):
        return repr(node.text)
    return "a list"


def parse_source(text: str, cls: str) -> Program:
    """Parse a program of class ``C``, ``B`` or ``B_inf``."""
    cls = normalize_class(cls)
    parser = _Parser(cls)
    program = Program(cls, locations=parser.locations)
    forms = _read(text)
    for k, node in enumerate(forms):
        is_def = isinstance(node, _List) and node.items and isinstance(node.items[0], _Atom) and node.items[0].text == "def"
        if is_def:
            if program.main is not None:
                parser.fail(node, "definitions must come before the main expression")
            if len(node.items) != 3 or not isinstance(node.items[1], _Atom):
                parser.fail(node, "expected (def NAME expr)")
            name = node.items[1].text
            if name in _C_KEYWORDS | _B_KEYWORDS or name.isdigit():
                parser.fail(node.items[1], f"{name!r} is reserved")
            if name in parser.env:
                parser.fail(node.items[1], f"duplicate definition {name!r}")
            expr = parser.expr(node.items[2])
            parser.env[name] = expr
            program.defs.append((name, cls, expr))
        else:
            if program.main is not None:
                parser.fail(node, "more than one main expression")
            program.main = parser.expr(node)
    return program


# ---------------------------------------------------------------- printing


def _fields(e) -> Tuple[str, list]:
    """Head keyword and printed/structured children of one node."""
    if isinstance(e, C.O):
        return "O", None
    if isinstance(e, C.Smash):
        return "smash", None
    if isinstance(e, (B.Zero, I.Zero)):
        return "zero", None
    if isinstance(e, (B.Pred, I.Pred)):
        return "pred", None
    if isinstance(e, (B.Cond, I.Cond)):
        return "cond", None
    if isinstance(e, (C.Succ, B.Succ, I.Succ)):
        return "succ", [str(e.b)]
    if isinstance(e, C.Proj):
        return "proj", [str(e.i), str(e.n)]
    if isinstance(e, B.Proj):
        return "pi", [str(e.i), str(e.n), str(e.s)]
    if isinstance(e, I.ProjN):
        return "pn", [str(e.i)]
    if isinstance(e, I.ProjS):
        return "ps", [str(e.i)]
    if isinstance(e, C.Comp):
        return "comp", [str(e.n), e.h, list(e.gs)]
    if isinstance(e, B.Comp):
        return "comp", [str(e.n), str(e.s), e.h, list(e.gN), list(e.gS)]
    if isinstance(e, I.Comp):
        return "comp", [e.h, list(e.gN), list(e.gS)]
    if isinstance(e, C.Rec):
        return "rec", [e.g, e.h0, e.h1, e.j]
    if isinstance(e, (B.Rec, I.Rec)):
        return "rec", [e.g, e.h0, e.h1]
    raise TypeError(f"cannot print {e!r}")


def _flat(e, memo) -> str:
    key = id(e)
    if key in memo:
        return memo[key]
    head, parts = _fields(e)
    if parts is None:
        out = head
    else:
        rendered = []
        for p in parts:
            if isinstance(p, str):
                rendered.append(p)
            elif isinstance(p, list):
                rendered.append("(" + " ".join(_flat(x, memo) for x in p) + ")")
            else:
                rendered.append(_flat(p, memo))
        out = "(" + head + " " + " ".join(rendered) + ")"
    memo[key] = out
    return out


def _pretty(e, indent, width, memo, out: List[str]):
    flat = _flat(e, memo)
    pad = " " * indent
    if len(flat) + indent <= width:
        out.append(pad + flat)
        return
    head, parts = _fields(e)
    scalars = [p for p in parts if isinstance(p, str)]
    out.append(pad + "(" + " ".join([head] + scalars))
    for p in parts:
        if isinstance(p, str):
            continue
        if isinstance(p, list):
            line = "(" + " ".join(_flat(x, memo) for x in p) + ")"
            if len(line) + indent + 2 <= width:
                out.append(" " * (indent + 2) + line)
            else:
                out.append(" " * (indent + 2) + "(")
                for x in p:
                    _pretty(x, indent + 4, width, memo, out)
                out[-1] += ")"
        else:
            _pretty(p, indent + 2, width, memo, out)
    out[-1] += ")"


def to_source(e, width: int = 100) -> str:
    """Render an expression of any class; the result re-parses to an equal tree."""
    memo: Dict[int, str] = {}
    out: List[str] = []
    _pretty(e, 0, width, memo, out)
    return "\n".join(out)
