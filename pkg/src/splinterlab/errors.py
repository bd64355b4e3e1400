"""Exception types shared across the workbench."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error raised by splinterlab."""


class DivisionByZero(WorkbenchError, ZeroDivisionError):
    pass


class FieldError(WorkbenchError, ValueError):
    """Invalid field context (non-prime characteristic, reducible modulus, too large)."""


class DimensionMismatch(WorkbenchError, ValueError):
    pass


class DegreeMismatch(WorkbenchError, ValueError):
    pass


class NotMonicInVariable(WorkbenchError, ValueError):
    pass


class BudgetExceeded(WorkbenchError):
    pass


class UnsupportedDimension(WorkbenchError, ValueError):
    pass


class DegenerateMap(WorkbenchError, ValueError):
    pass


class NonNormalCone(WorkbenchError, ValueError):
    pass


class WindowError(WorkbenchError, ValueError):
    pass


class StabilizationFailure(WorkbenchError):
    pass


class IdentityFailure(WorkbenchError):
    pass


class ShapeMismatch(WorkbenchError, ValueError):
    pass


class ValidationError(WorkbenchError, ValueError):
    pass


class CacheCorrupt(WorkbenchError):
    pass
