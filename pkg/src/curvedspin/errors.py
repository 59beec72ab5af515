"""Exception types raised by the geometry, kinematics and analysis layers."""


class CurvedSpinError(Exception):
    """Base class for all domain errors of this package."""


class DomainError(CurvedSpinError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class HorizonSingularity(DomainError):
    """The static chart was evaluated on or inside the event horizon."""


class PhysicalSingularity(DomainError):
    """The requested point sits at (or beyond) the curvature singularity r = 0."""


class FrameMismatch(CurvedSpinError, ValueError):
    """Objects from different events or frames were combined."""


class NoRoot(CurvedSpinError):
    """A bracketed root search found no sign change."""


class NotConstraining(CurvedSpinError):
    """A position-uncertainty bound never falls below the given value outside the horizon."""
