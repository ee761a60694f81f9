"""Exception taxonomy.

Callers are expected to branch on these: degeneracy and geometry errors mean
the input curve or point violates a geometric precondition, precision errors
mean the verdict could not be certified at working precision (perturb the
input or raise the resolution), and the on-discriminant signal marks a point
whose root-count parity says it sits on a tangency-degeneracy locus.
"""

from __future__ import annotations


class OsculantError(Exception):
    """Base class for geometric and numerical failures raised by this package."""


class DegeneracyError(OsculantError):
    """Curve jets lost rank: the requested osculating datum does not exist."""


class GeometryError(OsculantError):
    """Input violates a geometric precondition (typically: the curve is not convex)."""


class PrecisionError(OsculantError):
    """Result could not be certified at working precision."""


class OnDiscriminantError(OsculantError):
    """Root-count parity flagged the point as numerically on the discriminant.

    Carries the offending point and the raw count so the caller can either
    perturb the point or accept a boundary classification.
    """

    def __init__(self, msg: str, point=None, count=None):
        super().__init__(msg)
        self.point = point
        self.count = count
