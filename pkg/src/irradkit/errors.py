"""Exception types shared across the toolkit."""

from __future__ import annotations


class IrradkitError(Exception):
    """Base class for all toolkit errors."""


class UnknownClass(IrradkitError):
    pass


class UnknownProperty(IrradkitError):
    pass


class AlreadyExists(IrradkitError):
    pass


class FrozenClass(IrradkitError):
    """Raised on mutation attempts against a foreign-namespace class."""


class LiteralOnObjectProperty(IrradkitError):
    pass


class ObjectOnDataProperty(IrradkitError):
    pass


class CyclicHierarchy(IrradkitError):
    pass


class TurtleSyntaxError(IrradkitError):
    """Malformed Turtle input; carries the 1-based position of the offence."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownPrefix(TurtleSyntaxError):
    pass


class UnknownElement(IrradkitError):
    pass


class ValidationError(IrradkitError):
    pass


class UnknownExperiment(IrradkitError):
    pass


class NotFound(IrradkitError):
    pass


class VersionConflict(IrradkitError):
    pass


class Forbidden(IrradkitError):
    pass


class TemporalOrder(IrradkitError):
    pass


class TypeMismatch(IrradkitError):
    """A submitted value's shape contradicts the widget of its form field."""
