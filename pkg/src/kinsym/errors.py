"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KinsymError(Exception):
    pass


class ParseError(KinsymError):
    """Syntax error at a character offset, with the set of tokens that would fit."""

    def __init__(self, message: str, offset: int | None, expected=frozenset(), line: int | None = None):
        self.offset = offset
        self.expected = frozenset(expected)
        self.line = line
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if offset is not None:
            parts.append(f"offset {offset}")
        where = f" at {', '.join(parts)}" if parts else ""
        exp = f" (expected {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message}{where}{exp}")
        self.message = message


class UnknownIdentifierError(ParseError):
    def __init__(self, name: str, offset: int, line: int | None = None):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset, line=line)


class EvaluationError(KinsymError):
    """Numeric evaluation hit a zero denominator or a domain/overflow failure."""

    def __init__(self, message: str, subexpr=None):
        self.subexpr = subexpr
        super().__init__(f"{message}: {subexpr}" if subexpr is not None else message)


class UsageError(KinsymError):
    """Bad command-line arguments or a missing input file."""


class IndeterminateError(KinsymError):
    """Too many sample points failed to evaluate for a verdict."""


class DegenerateError(KinsymError):
    """The Liouville density vanishes identically or the two-form is not invertible."""


class HypothesisViolation(KinsymError):
    def __init__(self, relation: str, witness=None):
        self.relation = relation
        self.witness = witness
        msg = f"hypothesis violated: {relation}"
        if witness is not None:
            msg += f" (witness {witness})"
        super().__init__(msg)


class InadmissibleError(KinsymError):
    """The generating function is not conserved along the flow."""


class InvariantViolation(KinsymError):
    def __init__(self, relation: str, witness=None):
        self.relation = relation
        self.witness = witness
        msg = f"invariant violated: {relation}"
        if witness is not None:
            msg += f" (witness {witness})"
        super().__init__(msg)


class VerificationFailure(InvariantViolation):
    """A solved object failed its own defining equation (signals a simplifier bug)."""
