"""Exception hierarchy shared by all hoplog modules.

Every rejection carries the name of the violated rule via ``rule`` (the
class name), so callers and tests can match on it without parsing messages.
"""

from __future__ import annotations


class HoplogError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def rule(self) -> str:
        return type(self).__name__


class ParseError(HoplogError):
    """Concrete-syntax error with a source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class DuplicateDeclaration(ParseError):
    pass


class TypeCheckError(HoplogError):
    pass


class UnboundSymbol(TypeCheckError):
    pass


class IllTypedApplication(TypeCheckError):
    pass


class NegOfNonBoolean(TypeCheckError):
    pass


class EqOfNonIndividual(TypeCheckError):
    pass


class TypeMismatch(TypeCheckError):
    pass


class IllTyped(TypeCheckError):
    pass


class NonVariableHeadArgument(TypeCheckError):
    pass


class RepeatedHeadVariable(TypeCheckError):
    pass


class ArityMismatch(TypeCheckError):
    pass


class AmbiguousVariableType(TypeCheckError):
    pass


class ConflictingVariableType(TypeCheckError):
    pass


class ProgramCheckError(TypeCheckError):
    """Aggregate of the clause-level errors found while checking a program.

    All violations are collected before raising so that the report names
    every offending occurrence, not just the first.
    """

    def __init__(self, errors: list[TypeCheckError]):
        self.errors = errors
        super().__init__("; ".join(f"{e.rule}: {e}" for e in errors))

    @property
    def rules(self) -> list[str]:
        return [e.rule for e in self.errors]


class GroundingError(HoplogError):
    pass


class EmptyUniverse(GroundingError):
    pass


class GroundingLimitExceeded(GroundingError):
    pass


class EvalError(HoplogError):
    pass


class UnknownAtom(EvalError):
    pass


class TooLarge(EvalError):
    pass


class NotIncreasing(EvalError):
    """Internal-consistency failure: a stage sequence left its ordering."""


class LocalStratificationViolation(EvalError):
    """Internal-consistency failure: a ground clause breaks the strata."""


class DepthExceeded(EvalError):
    """A required valuation left the configured size budget.

    Reported to callers as "unknown at this depth"; never conflated with a
    definite false answer.
    """
