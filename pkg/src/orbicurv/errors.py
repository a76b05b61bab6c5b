"""Exception types shared across the package."""


class OrbicurvError(Exception):
    """Base class for all package errors."""


class InvalidComplexError(OrbicurvError):
    """A 2-complex description violates a structural invariant."""


class InvalidMapError(OrbicurvError):
    """A cellular map is not boundary- or endpoint-compatible."""


class InvalidActionError(OrbicurvError):
    """A group action is not cellular, not finite, or has inversions."""


class GroupCapError(OrbicurvError):
    """Group closure enumeration exceeded the configured element cap."""


class FoldError(OrbicurvError):
    """A fold or pushout would identify a cell with itself inconsistently."""


class InvalidDiagramError(OrbicurvError):
    """A disk diagram fails contractibility or planarity checks."""
