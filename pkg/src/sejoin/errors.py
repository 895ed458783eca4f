"""Exception hierarchy for sejoin."""

from __future__ import annotations


class SejoinError(ValueError):
    """Base class for every error raised by the package."""


class LefschetzViolated(SejoinError):
    pass


class Inconsistent(SejoinError):
    pass


class BothFactorsHaveTorsion(SejoinError):
    pass


class InvariantViolation(SejoinError):
    """A space breaks a named structural invariant."""

    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule
        self.detail = message


class ParseError(SejoinError):
    """Malformed input text; ``position`` is a 0-based offset or line number."""

    def __init__(self, message: str, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")
        self.position = position


class UnknownAtom(ParseError):
    pass


class NotFano(SejoinError):
    pass


class NotPairwiseCoprime(SejoinError):
    pass


class OutsideDelPezzoRange(SejoinError):
    pass


class NotSimplyConnected(SejoinError):
    pass


class ModelRationalMismatch(SejoinError):
    pass


class MismatchedFactors(SejoinError):
    pass


class BothZero(SejoinError):
    pass


class IndeterminateOrder(SejoinError):
    pass


class WrongShape(SejoinError):
    pass
