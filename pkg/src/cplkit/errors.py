"""Exception hierarchy shared by every cplkit module."""

from __future__ import annotations


class CplkitError(Exception):
    """Base class for all errors raised by cplkit."""


class ParseError(CplkitError):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<input>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line:
            return f"{self.source}:{self.line}:{self.column}: {self.message}"
        return f"{self.source}: {self.message}"


class CyclicError(CplkitError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("accessibility relation has a cycle: " + " < ".join(self.cycle))


class UnknownWorldError(CplkitError):
    def __init__(self, world):
        self.world = world
        super().__init__(f"undeclared world {world!r}")


class PolarityClashError(CplkitError):
    pass


class SideConditionError(CplkitError):
    pass


class OrderError(CplkitError):
    pass


class UnsupportedShape(CplkitError):
    pass


class NoRedex(CplkitError):
    pass


class FragmentError(CplkitError):
    pass


class RangeRestrictionError(ParseError):
    pass


class EmptyDomainError(CplkitError):
    pass


class UnstratifiableError(CplkitError):
    def __init__(self, message: str, rule=None):
        self.rule = rule
        super().__init__(message)


class TooManyStrataError(CplkitError):
    def __init__(self, message: str, rule=None, strata: int = 0):
        self.rule = rule
        self.strata = strata
        super().__init__(message)
