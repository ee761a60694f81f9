"""Root filtration of projective space and the stratum-transport map.

A point p is classified by how many tangent hyperplanes the curve sends
through it: the stratum index is i = (n - total)/2 with total counted
with multiplicities.  Off the deepest stratum a point determines its
tangency moments uniquely, and projecting the curve at those moments
drops p into the elliptic hull of an even-dimensional child curve, where
radial coordinates about the Chebyshev center finish the classification.
Reversing the reading on a second curve with the same data transports
strata between curves, which is what the census of root-count components
rests on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .curves import ParamCurve
from .errors import GeometryError, OnDiscriminantError, PrecisionError
from .forms import factor_binary_form  # noqa: F401  (part of this layer's surface)
from .hulls import (EllipticHull, _hull_cache, elliptic_hull,
                    elliptic_hull_membership, hull_center)
from .projective import ProjPoint, normalize, osculating_intersection
from .projection import project_iterated
from .tangency import count_roots

__all__ = [
    "FiberPoint",
    "StratumData",
    "stratum_label",
    "tangency_data",
    "transport",
    "component_census",
    "elliptic_hull",
    "elliptic_hull_membership",
    "hull_center",
    "EllipticHull",
    "factor_binary_form",
]

_RADIUS_SLACK = 1e-9


@dataclass(frozen=True)
class FiberPoint:
    """Radial coordinates inside an elliptic hull: unit direction + fraction.

    radius is the fraction of the distance from the canonical center to the
    hull boundary along direction, so it lives in [0, 1).  The zero-radius
    fiber point has an empty direction convention of all zeros.
    """

    direction: tuple
    radius: float


@dataclass(frozen=True)
class StratumData:
    index: int
    moments: tuple
    fiber_point: FiberPoint


def stratum_label(c: ParamCurve, p, tol: Tolerances = DEFAULT) -> int:
    """Index of the root-filtration stratum containing p.

    The multiplicity-counted tangency total always matches the ambient
    dimension mod 2; a mismatch means the numerics landed on the
    discriminant (a tangency escaped with the wrong multiplicity) and the
    point cannot be classified as given.
    """
    rc = count_roots(c, p, tol)
    n = c.n
    if (n - rc.total) % 2 != 0:
        raise OnDiscriminantError(
            f"tangency total {rc.total} has the wrong parity for dimension "
            f"{n}; the point sits numerically on the discriminant"
        )
    return (n - rc.total) // 2


def _child_and_hull(c: ParamCurve, moments, tol: Tolerances):
    """Project out the tangency moments and build the resulting hull."""
    if moments:
        child = project_iterated(c, list(moments), tol)
        return child, _hull_cache(child.curve, tol)
    return None, _hull_cache(c, tol)


def tangency_data(c: ParamCurve, p, tol: Tolerances = DEFAULT) -> StratumData:
    """Full classification of p: stratum index, moments, fiber coordinates."""
    rc = count_roots(c, p, tol)
    n = c.n
    if (n - rc.total) % 2 != 0:
        raise OnDiscriminantError(
            f"tangency total {rc.total} has the wrong parity for dimension {n}"
        )
    i = (n - rc.total) // 2
    moments = tuple(rc.moments())
    if i == 0:
        # p is the single point cut out by the n osculating hyperplanes
        return StratumData(0, moments, FiberPoint((), 0.0))
    child, hull = _child_and_hull(c, moments, tol)
    v = np.asarray(getattr(p, "coords", p), float)
    q = child.push(v) if child is not None else v
    y = hull.to_chart(q)
    r = y - hull.center_chart
    dist = float(np.linalg.norm(r))
    if dist < 1e-12 * (1.0 + np.linalg.norm(hull.center_chart)):
        return StratumData(i, moments, FiberPoint((0.0,) * (2 * i), 0.0))
    d = r / dist
    span = hull.boundary_scale(d)
    rho = dist / span
    if rho >= 1.0 + _RADIUS_SLACK:
        raise PrecisionError(
            f"fiber radius {rho:.6f} exceeds the hull boundary; "
            "root count and hull geometry disagree"
        )
    return StratumData(i, moments, FiberPoint(tuple(d), min(rho, 1.0 - 1e-15)))


def _realize(c: ParamCurve, data: StratumData, tol: Tolerances) -> ProjPoint:
    """Point of c's ambient space with the given stratum data."""
    if data.index == 0:
        cut = osculating_intersection(c, list(data.moments), tol)
        if cut.dim != 0:
            raise GeometryError(
                f"osculating hyperplanes at the given moments cut out a "
                f"{cut.dim}-dimensional set, not a point"
            )
        return cut.spanning_point()
    child, hull = _child_and_hull(c, data.moments, tol)
    d = np.asarray(data.fiber_point.direction, float)
    if data.fiber_point.radius == 0.0 or not d.any():
        y = hull.center_chart
    else:
        y = hull.center_chart + data.fiber_point.radius * hull.boundary_scale(d) * d
    v = hull.from_chart(y)
    if child is not None:
        v = child.lift_point(v)
    return normalize(v)


def transport(p, c1: ParamCurve, c2: ParamCurve,
              tol: Tolerances = DEFAULT) -> ProjPoint:
    """Carry p across curves keeping stratum, moments and fiber coordinates.

    Moment tuples live on each curve's own parameter circle.  When the two
    projective periods differ the circles are identified by the orientation
    preserving linear map, so moments rescale by the period ratio; for equal
    periods they are carried over unchanged.
    """
    if c1.n != c2.n:
        raise ValueError("transport needs curves of the same ambient dimension")
    data = tangency_data(c1, p, tol)
    scale = c2.projective_period / c1.projective_period
    if scale != 1.0:
        data = StratumData(data.index,
                           tuple(t * scale for t in data.moments),
                           data.fiber_point)
    return _realize(c2, data, tol)


def _spread_moments(n: int, period: float, rng: np.random.Generator) -> list:
    """n moments on the circle with circular gaps at least 0.08 of the period."""
    for _ in range(200):
        ts = np.sort(rng.uniform(0.0, period, n))
        gaps = np.diff(np.append(ts, ts[0] + period))
        if gaps.min() >= 0.08 * period:
            return [float(t) for t in ts]
    return [period * k / n for k in range(n)]


def _census_point(c: ParamCurve, rng: np.random.Generator) -> np.ndarray:
    """One census sample from a mixture of region-seeking draws.

    Plain gaussian points almost never land in the high-count strata once
    the dimension grows (the region near the curve is thin), so the census
    mixes ambient draws with points near the curve, near chords, and near
    corners where n osculating hyperplanes meet; the histogram support,
    not the measure, is what the census certifies.
    """
    n = c.n
    period = c.projective_period
    mode = rng.uniform()
    if mode < 0.45:
        return rng.standard_normal(n + 1)
    if mode < 0.72:
        t = rng.uniform(0.0, period)
        base = c.point(t)
        eps = 10.0 ** rng.uniform(-2.6, -0.3)
        return base + eps * np.linalg.norm(base) * rng.standard_normal(n + 1)
    if mode < 0.88:
        t1, t2 = rng.uniform(0.0, period, 2)
        mix = rng.uniform(0.15, 0.85)
        base = mix * c.point(t1) + (1.0 - mix) * c.point(t2)
        eps = 10.0 ** rng.uniform(-3.0, -1.0)
        return base + eps * (np.linalg.norm(base) + 1e-9) * rng.standard_normal(n + 1)
    cut = osculating_intersection(c, _spread_moments(n, period, rng))
    base = cut.spanning_point().coords
    return base + 1e-3 * rng.standard_normal(n + 1)


def component_census(c: ParamCurve, samples: int, seed: int = 0,
                     tol: Tolerances = DEFAULT,
                     constancy_checks: int = 100) -> dict:
    """Histogram of tangency counts over random points, plus component count.

    Points that trip the on-discriminant signal are discarded.  The support
    of the histogram must be exactly {n, n-2, ..., n mod 2}; any other value
    is a hard failure, while a missing value means the sampling never reached
    that stratum.  Local constancy of the count is spot-checked on fresh
    points nudged by 1e-5.
    """
    n = c.n
    rng = np.random.default_rng(seed)
    expected = set(range(n % 2, n + 1, 2))
    hist: dict[int, int] = {}
    kept = 0
    for _ in range(samples):
        v = _census_point(c, rng)
        try:
            total = count_roots(c, v, tol).total
        except PrecisionError:
            continue
        if (n - total) % 2 != 0:
            continue
        if total not in expected:
            raise GeometryError(
                f"tangency count {total} observed; dimension {n} admits only "
                f"{sorted(expected)}"
            )
        hist[total] = hist.get(total, 0) + 1
        kept += 1
    if set(hist) != expected:
        missing = sorted(expected - set(hist))
        raise PrecisionError(
            f"census with {samples} samples never reached counts {missing}"
        )
    checked = 0
    while checked < constancy_checks:
        v = _census_point(c, rng)
        w = v + 1e-5 * np.linalg.norm(v) * rng.standard_normal(n + 1)
        try:
            a = count_roots(c, v, tol).total
            b = count_roots(c, w, tol).total
        except PrecisionError:
            continue
        if (n - a) % 2 != 0 or (n - b) % 2 != 0:
            continue
        if a != b:
            raise GeometryError(
                f"tangency count jumped {a} -> {b} under a 1e-5 perturbation"
            )
        checked += 1
    return {
        "n": n,
        "samples": samples,
        "histogram": {str(k): hist[k] for k in sorted(hist, reverse=True)},
        "components": len(hist),
        "seed": seed,
    }
