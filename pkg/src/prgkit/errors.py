"""Exception types shared across the package."""

from __future__ import annotations


class PrgKitError(Exception):
    """Base class for all errors raised by prgkit."""


class WidthMismatchError(PrgKitError, ValueError):
    """Two objects that must agree on a bit width do not."""


class WidthBoundError(PrgKitError, ValueError):
    """A width exceeds the exhaustive-enumeration bound."""


class NotInjectiveError(PrgKitError, ValueError):
    """A mapping that must be injective maps two inputs to one output.

    ``collisions`` holds the full sorted witness list.
    """

    def __init__(self, message: str, collisions=()):
        self.collisions = tuple(collisions)
        if self.collisions:
            first = self.collisions[0]
            message = f"{message} (e.g. {first}; {len(self.collisions)} collision(s))"
        super().__init__(message)


class ParseError(PrgKitError, ValueError):
    """Malformed text input. ``line`` is 1-based, or None when not positional."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class UnknownGateError(PrgKitError, KeyError):
    def __str__(self) -> str:
        return f"unknown gate {self.args[0]!r}"


class DuplicateGateError(PrgKitError, ValueError):
    pass


class NetlistError(PrgKitError, ValueError):
    """A netlist failed structural validation."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid netlist: {lines}")
