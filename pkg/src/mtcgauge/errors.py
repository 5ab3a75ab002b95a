"""Exception hierarchy for mtcgauge."""


class MTCError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(MTCError, ValueError):
    """A matrix argument has the wrong shape (e.g. non-square)."""


class DimensionError(MTCError, OverflowError):
    """A requested matrix dimension does not fit the platform index type."""


class MalformedDataError(MTCError, ValueError):
    """Modular data violates a structural requirement.

    ``field`` names the offending field when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NonIntegralError(MTCError, ValueError):
    """A value that should be an integer is not, within tolerance."""

    def __init__(self, message, value=None, residual=None):
        super().__init__(message)
        self.value = value
        self.residual = residual


class VerlindeError(NonIntegralError):
    """The Verlinde formula produced a non-integral or negative coefficient.

    ``witness`` is the index triple ``(x, y, z)`` of the offending ``N^z_{xy}``.
    """

    def __init__(self, message, witness, value=None, residual=None):
        super().__init__(message, value=value, residual=residual)
        self.witness = witness


class FormulaViolationError(VerlindeError):
    """A closed-form fusion coefficient of the gauged theory is not a non-negative integer."""


class InvalidChoiceError(MTCError, ValueError):
    """A user-supplied family of square roots of twists is inconsistent."""


class GaugingError(MTCError):
    """The gauged data failed its own axiom check. ``block`` names the worst block."""

    def __init__(self, message, block=None, report=None):
        super().__init__(message)
        self.block = block
        self.report = report


class SizeError(MTCError):
    """A computation would exceed its memory budget."""


class ParameterError(MTCError, ValueError):
    """Invalid parameters for a catalog builder."""


class UnknownTheoryError(MTCError, KeyError):
    """Catalog lookup of an unknown key."""


class TheoryFileError(MTCError):
    """Base class for theory-file parse errors. ``location`` says where."""

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class TheorySyntaxError(TheoryFileError):
    """The document is not valid JSON."""


class SchemaError(TheoryFileError):
    """The document is JSON but does not follow the ``mtc-data/1`` layout."""


class InvariantError(TheoryFileError):
    """The document parses, but the data violates a modular-data invariant."""
