"""Exception types shared across the package."""

from __future__ import annotations


class KneadError(Exception):
    """Base class for all package errors."""


class DomainError(KneadError, ValueError):
    pass


class EscapeError(KneadError):
    def __init__(self, index: int, value: float, msg: str | None = None):
        self.index = index
        self.value = value
        super().__init__(msg or f"orbit left the domain at iterate {index} (value {value!r})")


class ShapeError(KneadError, ValueError):
    """The map's first lap is decreasing (first turning point is a minimum)."""


class InconsistentOrbitError(KneadError, ValueError):
    pass


class AmbiguityError(KneadError, ValueError):
    pass


class AdmissibilityError(KneadError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"inadmissible kneading data: {report.reason}")


class NotMarkovError(KneadError):
    pass


class DegeneratePartitionError(KneadError):
    pass


class ConventionError(KneadError, ArithmeticError):
    """An exact identity that must hold by construction failed."""


class NotApplicableError(KneadError):
    pass


class IneligibleFamilyError(KneadError):
    pass
