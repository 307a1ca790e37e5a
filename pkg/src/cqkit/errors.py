"""Exception types shared across the package.

Errors raised while reading text inputs carry a 1-based source location;
errors raised from library calls leave it unset.
"""

from __future__ import annotations


class CQError(Exception):
    """Base class for every error this package raises deliberately."""

    def __init__(self, message: str, *, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.line = line
        self.col = col

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"line {self.line}, col {self.col}: {base}"
        return base


class ParseError(CQError):
    """Input text does not match the grammar."""


class DuplicateName(CQError):
    """A name that must be unique (attribute, relation, query) was repeated."""

    def __init__(self, kind: str, name: str, *, line=None, col=None):
        super().__init__(f"duplicate {kind} {name!r}", line=line, col=col)
        self.kind = kind
        self.name = name


class UnknownQuery(CQError):
    def __init__(self, name: str, *, line=None, col=None):
        super().__init__(f"unknown query {name!r}", line=line, col=col)
        self.name = name


class EmptyInstance(CQError):
    """Database instances at external boundaries must contain a fact."""

    def __init__(self, *, line=None, col=None):
        super().__init__("instance is empty", line=line, col=col)


class UnknownRelation(CQError):
    def __init__(self, name: str, *, line=None, col=None):
        super().__init__(f"unknown relation {name!r}", line=line, col=col)
        self.name = name


class ArityMismatch(CQError):
    def __init__(self, name: str, expected: int, got: int, *, line=None, col=None):
        super().__init__(
            f"relation {name!r} expects {expected} argument(s), got {got}",
            line=line,
            col=col,
        )
        self.name = name
        self.expected = expected
        self.got = got


class SchemeMismatch(CQError):
    """The two queries of a containment statement disagree on attributes."""

    def __init__(self, lhs: str, rhs: str, *, line=None, col=None):
        super().__init__(f"result schemes differ: {lhs} vs {rhs}", line=line, col=col)


class AtomNotInBody(CQError):
    def __init__(self, atom: str):
        super().__init__(f"atom {atom} does not occur in the query body")


class HeadsNotEmpty(CQError):
    def __init__(self):
        super().__init__("operation requires both heads to be empty")


class NotMonotoneInput(CQError):
    def __init__(self):
        super().__init__("statement is not monotone; nothing to compile")


class InternalCertificateInvalid(CQError):
    """A produced certificate failed re-validation; always a bug."""


class BudgetExceeded(CQError):
    def __init__(self, what: str):
        super().__init__(f"evaluation budget exceeded ({what})")
        self.what = what


class BoundsTooLarge(CQError):
    def __init__(self, universe: int, cap: int):
        super().__init__(
            f"fact universe has {universe} possible facts, above the cap of {cap}"
        )
        self.universe = universe
        self.cap = cap
