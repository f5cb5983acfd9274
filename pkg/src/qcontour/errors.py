"""Exception types shared across the engine.

Every error raised by qcontour derives from :class:`QContourError`, so callers
can catch the whole family with one clause.  Validation problems (bad shapes,
bad schemas) and degenerate-physics conditions (forbidden selections, all-zero
families) are kept as separate subclasses because the CLI maps them to
different exit codes.
"""

from __future__ import annotations


class QContourError(Exception):
    """Base class for all qcontour errors."""


class DimensionError(QContourError):
    """Operands have incompatible or invalid dimensions."""


class NormalizationError(QContourError):
    """A state vector violates the unit-norm invariant."""


class HermiticityError(QContourError):
    """A matrix required to be Hermitian is not."""


class GridError(QContourError):
    """A time lies outside the span of a Hamiltonian schedule."""


class TimeOrderError(QContourError):
    """Requested times violate the required ordering."""


class FamilyShapeError(QContourError):
    """Histories in a family do not share one time grid."""


class EmptyFamilyError(QContourError):
    """Constraints exclude every candidate history at some time."""


class DegenerateFamilyError(QContourError):
    """Every history in a family carries zero weight."""


class DegenerateSelectionError(QContourError):
    """Pre/post selection makes the conditioning denominator vanish."""


class ContingencyError(QContourError):
    """An absorber configuration has the wrong contingency structure."""


class ParseError(QContourError):
    """A scenario document violates the schema.

    Carries the JSON-ish path of the offending field, e.g. ``/dim`` or
    ``/schedule/segments/1``.
    """

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")
