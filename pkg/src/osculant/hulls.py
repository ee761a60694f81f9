"""Elliptic hulls: the tangency-free region of a convex curve.

For even ambient dimension every osculating hyperplane supports the curve
(the contact order n is even, so the curve touches without crossing), and
the hull of points with no tangent hyperplane is the intersection of the
supporting half-spaces.  Orienting each dual covector toward the curve and
averaging yields a covector whose affine chart contains both the curve and
the hull; inside that chart the hull is a bounded convex body, its canonical
interior point is the Chebyshev center of a sampled half-space polytope,
and the boundary along any ray has a closed form as a minimum over moments.

Odd ambient dimension has no convex hull in the chart; membership reduces
to having exactly one tangent hyperplane, and all radial machinery is used
fiberwise after slicing along that tangency (handled by the stratification
layer).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.optimize import linprog

from .config import DEFAULT, HULL_GRID, Tolerances
from .curves import ParamCurve, dual_curve
from .errors import GeometryError, PrecisionError
from .projective import ProjPoint, Subspace, normalize
from .tangency import count_roots

_SUPPORT_GRID = 512


@dataclass(frozen=True)
class EllipticHull:
    """Sampled half-space model of the hull of an even-dimensional curve.

    covectors are unit length and oriented so pairings with the curve are
    positive; chart is their mean (the canonical affine chart covector);
    frame rows complete chart to an orthonormal basis, giving affine
    coordinates y with x = chart + frame.T @ y.
    """

    curve: ParamCurve
    ambient: Subspace
    taus: np.ndarray
    covectors: np.ndarray
    signs: np.ndarray
    chart: np.ndarray
    frame: np.ndarray
    center: ProjPoint
    center_chart: np.ndarray

    @property
    def half_spaces(self) -> list:
        """Sampled supporting half-spaces as (raw dual covector, side sign)."""
        return [(s * a, float(s)) for a, s in zip(self.covectors, self.signs)]

    def to_chart(self, p) -> np.ndarray:
        """Affine chart coordinates of a homogeneous point."""
        v = np.asarray(getattr(p, "coords", p), float)
        denom = float(self.chart @ v)
        if abs(denom) < 1e-12 * np.linalg.norm(v):
            raise GeometryError("point lies on the chart hyperplane at infinity")
        return self.frame @ (v / denom)

    def from_chart(self, y) -> np.ndarray:
        return self.chart + self.frame.T @ np.asarray(y, float)

    def support_values(self, p) -> np.ndarray:
        """Oriented pairings of the sampled hyperplanes with a chart point."""
        v = np.asarray(getattr(p, "coords", p), float)
        denom = float(self.chart @ v)
        return self.covectors @ (v / denom)

    def boundary_scale(self, direction) -> float:
        """Distance from the center to the hull boundary along a chart ray.

        For each moment the supporting half-space caps the ray at
        g(tau)/(-q(tau)) whenever the ray leaves it; the boundary is the
        minimum over moments, refined by one-dimensional minimization of
        the smooth ratio around the sampled argmin.
        """
        d = np.asarray(direction, float)
        nd = np.linalg.norm(d)
        if nd == 0.0:
            raise ValueError("direction must be nonzero")
        d = d / nd
        dual = _dual_cache(self.curve)
        period = self.curve.projective_period
        x0 = self.from_chart(self.center_chart)
        step = self.frame.T @ d

        def ratio(tau: float) -> float:
            a, _ = _oriented_covector(dual, float(tau), self._orient)
            g = float(a @ x0)
            q = float(a @ step)
            if q >= -1e-14:
                return np.inf
            return g / -q

        ts = np.arange(_SUPPORT_GRID) * (period / _SUPPORT_GRID)
        vals = np.array([ratio(t) for t in ts])
        if not np.isfinite(vals).any():
            raise GeometryError("hull is unbounded along the requested ray")
        i = int(np.argmin(vals))
        lo = ts[i] - period / _SUPPORT_GRID
        hi = ts[i] + period / _SUPPORT_GRID
        res = minimize_scalar(ratio, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        return float(min(res.fun, vals[i]))

    @property
    def _orient(self) -> np.ndarray:
        return self.__dict__.setdefault(
            "_orient_ref", _orientation_reference(self.curve))


_DUALS: dict[int, tuple] = {}


def _dual_cache(curve: ParamCurve) -> ParamCurve:
    # keyed by id with a strong reference kept, so ids cannot be recycled
    key = id(curve)
    entry = _DUALS.get(key)
    if entry is None or entry[0] is not curve:
        if len(_DUALS) > 8:
            _DUALS.clear()
        entry = (curve, dual_curve(curve))
        _DUALS[key] = entry
    return entry[1]


def _orientation_reference(curve: ParamCurve) -> np.ndarray:
    """Curve samples used to orient covectors toward the curve side."""
    ts = np.arange(128) * (curve.projective_period / 128)
    pts = curve.jet_grid(ts, 0)[:, 0, :]
    return pts


def _oriented_covector(dual: ParamCurve, tau: float,
                       reference: np.ndarray) -> tuple[np.ndarray, float]:
    a = dual.point(tau)
    a = a / np.linalg.norm(a)
    sign = 1.0
    if float(np.mean(reference @ a)) < 0.0:
        a, sign = -a, -1.0
    return a, sign


def elliptic_hull(curve: ParamCurve, grid: int = HULL_GRID,
                  tol: Tolerances = DEFAULT) -> EllipticHull:
    """Build the sampled hull model of an even-dimensional convex curve."""
    n = curve.n
    if n % 2 != 0:
        raise ValueError("the elliptic hull is convex only in even dimension")
    period = curve.projective_period
    dual = _dual_cache(curve)
    ref = _orientation_reference(curve)
    taus = np.arange(grid) * (period / grid)
    pairs = [_oriented_covector(dual, float(t), ref) for t in taus]
    covs = np.vstack([a for a, _ in pairs])
    signs = np.array([s for _, s in pairs])
    if (ref @ covs.T).min() < -1e-9:
        raise GeometryError(
            "an osculating hyperplane crosses the curve; "
            "the hull construction needs a convex curve of even dimension"
        )
    w = covs.mean(axis=0)
    nw = np.linalg.norm(w)
    if nw < 1e-9:
        raise GeometryError("dual covectors average out; no canonical chart")
    w = w / nw
    _, _, vt = np.linalg.svd(w[None, :])
    frame = vt[1:]

    # Chebyshev center of the sampled polytope in chart coordinates
    b = covs @ w
    A = covs @ frame.T
    rownorm = np.linalg.norm(A, axis=1)
    lp = linprog(
        c=np.concatenate((np.zeros(n), [-1.0])),
        A_ub=np.hstack((-A, rownorm[:, None])),
        b_ub=b,
        bounds=[(None, None)] * n + [(0.0, None)],
        method="highs",
    )
    if not lp.success or lp.x[-1] <= 0.0:
        raise GeometryError("supporting half-spaces admit no interior point")
    y0 = lp.x[:n]
    center_vec = w + frame.T @ y0
    return EllipticHull(
        curve=curve,
        ambient=Subspace.full(n),
        taus=taus,
        covectors=covs,
        signs=signs,
        chart=w,
        frame=frame,
        center=normalize(center_vec),
        center_chart=y0,
    )


def elliptic_hull_membership(curve: ParamCurve, p,
                             tol: Tolerances = DEFAULT,
                             hull: EllipticHull | None = None) -> bool:
    """Whether p has no tangent hyperplane (even n) or exactly one (odd n).

    The even case is cross-checked against the supporting half-space test;
    a decisive disagreement between the two characterizations raises a
    precision error.
    """
    n = curve.n
    total = count_roots(curve, p, tol).total
    if n % 2 == 1:
        return total == 1
    member = total == 0
    if hull is None:
        hull = _hull_cache(curve, tol)
    v = np.asarray(getattr(p, "coords", p), float)
    denom = float(hull.chart @ v)
    if abs(denom) < 1e-12 * np.linalg.norm(v):
        if member:
            raise PrecisionError("hull member claimed on the chart at infinity")
        return False
    s = hull.covectors @ (v / denom)
    margin = 1e-7 * np.abs(s).max()
    side = bool(s.min() > margin)
    if member != side and (s.min() > margin or s.min() < -margin):
        raise PrecisionError(
            f"root count ({total}) and half-space test disagree decisively "
            f"(min pairing {s.min():.3e})"
        )
    return member


_HULLS: dict[int, tuple] = {}


def _hull_cache(curve: ParamCurve, tol: Tolerances) -> EllipticHull:
    key = id(curve)
    entry = _HULLS.get(key)
    if entry is None or entry[0] is not curve:
        if len(_HULLS) > 8:
            _HULLS.clear()
        entry = (curve, elliptic_hull(curve, tol=tol))
        _HULLS[key] = entry
    return entry[1]


def hull_center(curve: ParamCurve, tau_grid: int = HULL_GRID,
                tol: Tolerances = DEFAULT) -> ProjPoint:
    """Chebyshev center of the sampled hull (even dimension only)."""
    return elliptic_hull(curve, grid=tau_grid, tol=tol).center
