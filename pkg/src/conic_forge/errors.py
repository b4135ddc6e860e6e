"""Exception types shared across the package."""

from __future__ import annotations


class ConicForgeError(Exception):
    """Base class for every error raised by this package."""


class CyclicRelation(ConicForgeError):
    pass


class RedundantCover(ConicForgeError):
    pass


class TooLarge(ConicForgeError):
    """Input exceeds a configured desk-scale bound."""


class NotPerfect(ConicForgeError):
    pass


class BadArity(ConicForgeError):
    pass


class BadMultiplicity(ConicForgeError):
    pass


class Disconnected(ConicForgeError):
    pass


class RankDeficient(ConicForgeError):
    pass


class Unsupported(ConicForgeError):
    """Raised for rings whose class group has torsion."""


class DimensionMismatch(ConicForgeError):
    pass


class BadMultiset(ConicForgeError):
    pass


class Unbounded(ConicForgeError):
    pass


class InvariantViolation(ConicForgeError):
    """A mathematical invariant that must hold failed on a concrete input."""


class SeparationBlowup(ConicForgeError):
    """Too many distinct weight sums while checking a separation step."""


class ScheduleStuck(ConicForgeError):
    def __init__(self, residual, certificate=None):
        self.residual = sorted(tuple(c) for c in residual)
        self.certificate = certificate
        super().__init__(f"separation schedule stuck; {len(self.residual)} classes left")
