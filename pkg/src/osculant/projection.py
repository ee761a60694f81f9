"""Projection of a curve onto an osculating hyperplane along tangent lines.

For a moment tau with osculating hyperplane covector h, the tangent line at
any t meets that hyperplane in the point

    g'(t) gamma(t) - g(t) gamma'(t),     g(t) = <h, gamma(t)>,

which sweeps out a new closed curve inside the hyperplane.  The formula
vanishes to order exactly n-1 at t = tau; since every coordinate is a trig
polynomial, the common factor sin^(n-1) of the gap is removed by exact
synthetic division on the unit circle instead of a limiting procedure, so
the projected curve is again a trig-polynomial curve with analytic jets.
Dropping a dimension at a time makes the construction recursive: repeated
moments land in deeper osculating subspaces, matching the merge convention
for coincident hyperplanes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fourier, projective
from .config import DEFAULT, Tolerances
from .curves import ParamCurve
from .errors import GeometryError
from .tangency import RootCount, count_roots

DEFLATE_REMAINDER = 1e-8
_MIN_NORM_REL = 1e-9


@dataclass(frozen=True)
class ProjectedCurve:
    """A curve living in an intersection of osculating hyperplanes.

    `curve` is the projected curve in internal coordinates of the ambient
    subspace; `lift` has orthonormal rows, so internal homogeneous vectors
    map to ambient ones through its transpose and back through itself.
    """

    base: ParamCurve
    moments: tuple
    curve: ParamCurve
    lift: np.ndarray
    ambient: projective.Subspace

    def push(self, p) -> np.ndarray:
        """Ambient homogeneous coordinates to internal ones."""
        v = np.asarray(getattr(p, "coords", p), float)
        return self.lift @ v

    def lift_point(self, q) -> np.ndarray:
        """Internal homogeneous coordinates to ambient ones."""
        v = np.asarray(getattr(q, "coords", q), float)
        return self.lift.T @ v

    def count_roots(self, p, tol: Tolerances = DEFAULT) -> RootCount:
        """Tangency count of an ambient point with respect to the projection."""
        q = self.push(p)
        if np.linalg.norm(q) < 1e-9 * np.linalg.norm(
                np.asarray(getattr(p, "coords", p), float)):
            raise GeometryError("point is orthogonal to the ambient subspace")
        return count_roots(self.curve, q, tol)


def _projected_rows(curve: ParamCurve, h: np.ndarray) -> np.ndarray:
    """Coefficient rows of g' gamma - g gamma' (halfspan doubles)."""
    C = curve.coeffs
    K = curve.K
    nu = 0.5j * np.arange(-K, K + 1)
    g = h @ C
    gp = g * nu
    rows = [
        fourier.convolve(gp, C[i]) - fourier.convolve(g, C[i] * nu)
        for i in range(C.shape[0])
    ]
    return np.vstack(rows)


def _deflate_rows(rows: np.ndarray, tau: float, n: int, period: float):
    """Divide out the order-(n-1) zero at tau from every coordinate.

    In u = exp(it/2) the zero sits at unit-circle roots: two of them for a
    2pi-periodic curve, four for a pi-periodic one (the zero recurs at every
    projective repeat of tau).  The removed factor is a constant multiple of
    a power of a sine, so multiplying by the constant restores a real curve.
    """
    u = np.exp(0.5j * tau)
    if abs(period - np.pi) < 1e-12:
        roots = [u, 1j * u, -u, -1j * u]
        scalar = (2j) ** (n - 1) * np.exp(1j * (n - 1) * tau)
    else:
        roots = [u, -u]
        scalar = (2j) ** (n - 1) * np.exp(0.5j * (n - 1) * tau)
    out = []
    worst = 0.0
    for r in rows:
        q, rem = fourier.deflate(r, roots, n - 1)
        worst = max(worst, rem)
        out.append(q)
    return np.vstack(out) * scalar, worst


def project_onto_osculating_hyperplane(curve: ParamCurve, tau: float,
                                       tol: Tolerances = DEFAULT
                                       ) -> ProjectedCurve:
    """Project along tangent lines onto the osculating hyperplane at tau.

    The result is a first-class curve one dimension down, convex whenever
    the input is.  A tangent line lying inside the hyperplane (impossible
    for convex curves) leaves a zero of the projected parameterization and
    raises a geometry error.
    """
    n = curve.n
    if n < 2:
        raise ValueError("projection needs ambient dimension at least 2")
    h = projective.osculating_hyperplane(curve, tau, tol)
    rows = _projected_rows(curve, h)
    mat, worst = _deflate_rows(rows, float(tau), n, curve.projective_period)
    if worst > DEFLATE_REMAINDER:
        raise GeometryError(
            f"projection at tau={tau:.6g} does not vanish to order {n - 1}: "
            f"relative division remainder {worst:.2e}"
        )
    scale = np.abs(mat).max()
    herm = fourier.hermitized(mat)
    if np.abs(mat - herm).max() > 1e-8 * max(scale, 1e-300):
        raise GeometryError("deflated projection is not a real curve")

    # internal coordinates: orthonormal complement of the covector h
    _, _, vt = np.linalg.svd(h[None, :])
    B = vt[1:]
    inner = fourier.trimmed(B.astype(complex) @ herm)
    child = ParamCurve(inner, model=f"proj({curve.model} @ {tau:.6g})")

    ts = np.linspace(0.0, 4.0 * np.pi, 1024, endpoint=False)
    vals = child.jet_grid(ts, 0)[:, 0, :]
    norms = np.linalg.norm(vals, axis=1)
    if norms.min() < _MIN_NORM_REL * norms.max():
        raise GeometryError(
            "projected parameterization vanishes: some tangent line lies "
            "inside the osculating hyperplane (curve is not convex)"
        )

    # the filled-in point at tau must be the original curve point
    at_tau = np.real(fourier.evaluate(herm, np.array([float(tau)]))).ravel()
    a = at_tau / np.linalg.norm(at_tau)
    b = curve.point(tau)
    b = b / np.linalg.norm(b)
    if abs(abs(a @ b) - 1.0) > 1e-8:
        raise GeometryError("projection limit at tau disagrees with the curve point")

    return ProjectedCurve(
        base=curve,
        moments=(float(tau),),
        curve=child,
        lift=B,
        ambient=projective.Subspace(B, n),
    )


def project_iterated(curve: ParamCurve, moments, tol: Tolerances = DEFAULT
                     ) -> ProjectedCurve:
    """Repeated hyperplane projection; repeats of a moment merge naturally.

    Each step drops one dimension, so k moments admit k up to n-1 (the last
    useful target is a curve on a projective line).  The composed lift keeps
    orthonormal rows, and the ambient subspace is the intersection of the
    osculating hyperplanes at the given moments of the original curve.
    """
    moments = tuple(float(t) for t in moments)
    n = curve.n
    if not 1 <= len(moments) <= n - 1:
        raise ValueError(f"moment count must be in 1..{n - 1}")
    cur = curve
    U = np.eye(n + 1)
    for tau in moments:
        step = project_onto_osculating_hyperplane(cur, tau, tol)
        cur = step.curve
        U = step.lift @ U
    return ProjectedCurve(
        base=curve,
        moments=moments,
        curve=cur,
        lift=U,
        ambient=projective.Subspace(U, n),
    )
