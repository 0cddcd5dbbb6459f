"""Exception hierarchy shared by every module of the package."""


class PolytimeError(Exception):
    """Base class for all errors raised by polytime."""


class MalformedLiteral(PolytimeError, ValueError):
    pass


class PolynomialError(PolytimeError, ValueError):
    pass


class IndexOutOfRange(PolynomialError, IndexError):
    pass


class VariableCountMismatch(PolynomialError):
    pass


def format_path(path):
    return "/".join(path) if path else "<root>"


class IllFormed(PolytimeError):
    """An expression violates one of the arity rules.

    ``path`` is the sequence of child selectors leading from the root of the
    checked expression to the offending subterm.
    """

    def __init__(self, rule, message, path=(), term=None):
        self.rule = rule
        self.path = tuple(path)
        self.term = term
        super().__init__(f"ill-formed at {format_path(self.path)}: [{rule}] {message}")


class ArgumentMismatch(PolytimeError):
    """The number of arguments does not match the arity of the expression."""


class BoundViolation(PolytimeError):
    """A Cobham recursion exceeded the length of its bounding function."""

    def __init__(self, term, args, value_length, bound_length, path=()):
        self.term = term
        self.args = tuple(args)
        self.value_length = value_length
        self.bound_length = bound_length
        self.path = tuple(path)
        rendered = ", ".join(str(a) for a in self.args)
        super().__init__(
            f"RecBounded violated at {format_path(self.path)} on ({rendered}): "
            f"|f| = {value_length} > |j| = {bound_length}"
        )


class InferenceError(PolytimeError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        super().__init__(f"cannot infer arities at {format_path(self.path)}: {message}")


class UnknownName(PolytimeError, KeyError):
    def __str__(self):
        return f"unknown name: {self.args[0]}"


class ParseError(PolytimeError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{where}{message}")
