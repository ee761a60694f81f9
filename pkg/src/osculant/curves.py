"""Closed curve models in P^n with trigonometric-polynomial coordinates.

Every model (and everything derived from one: duals, projections) is a finite
trigonometric polynomial, so jets of any order are available in closed form
and root counting never needs numerical differentiation.

Models
------
trig_convex(2k)    (1, cos t, sin t, ..., cos kt, sin kt); period 2*pi.
trig_convex(2k+1)  (cos t, sin t, cos 3t, sin 3t, ..., cos (2k+1)t, sin (2k+1)t);
                   the lift flips sign after pi, so the projective period is pi.
rational_normal(n) (cos^n, cos^(n-1) sin, ..., sin^n); projective period pi.
fourier            caller-supplied harmonic coefficients (negative controls).
"""

from __future__ import annotations

import json

import numpy as np

from . import fourier
from .config import DEFAULT, Tolerances
from .errors import DegeneracyError
from .projective import Jet


class ParamCurve:
    """A curve S^1 -> P^n by homogeneous coordinates that are trig polynomials.

    coeffs[i, K+k] is the coefficient of exp(1j*(k/2)*t) in coordinate i.
    Instances are immutable; grid jets are cached per (grid, order).
    """

    def __init__(self, coeffs, model: str = "fourier"):
        coeffs = fourier.trimmed(fourier.hermitized(np.asarray(coeffs, complex)))
        if coeffs.ndim != 2:
            raise ValueError("coefficients must be a matrix (rows = coordinates)")
        if coeffs.shape[0] < 2:
            raise ValueError("a projective curve needs at least two coordinates")
        if not np.any(np.abs(coeffs) > 0):
            raise ValueError("zero curve")
        self.coeffs = coeffs
        self.coeffs.flags.writeable = False
        self.model = model
        self._grid_cache: dict = {}

    @property
    def n(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def K(self) -> int:
        return fourier.halfspan(self.coeffs)

    @property
    def projective_period(self) -> float:
        """pi when gamma(t + pi) = +/- gamma(t), else 2*pi."""
        K = self.K
        col = np.abs(self.coeffs).max(axis=0)
        ks = np.nonzero(col > 1e-12 * col.max())[0] - K
        if np.all(ks % 2 == 0):
            half = ks // 2  # integer frequencies
            if half.size and np.all(half % 2 == half[0] % 2):
                return np.pi
        return 2.0 * np.pi

    def point(self, t: float) -> np.ndarray:
        return fourier.evaluate(self.coeffs, float(t))

    def jet(self, t: float, order: int) -> np.ndarray:
        return fourier.jet_at(self.coeffs, t, order)

    def jet_grid(self, ts: np.ndarray, order: int) -> np.ndarray:
        """Stacked jets on a grid, shape (len(ts), order+1, n+1); cached."""
        ts = np.asarray(ts, float)
        key = (ts.shape[0], round(float(ts[0]), 12), round(float(ts[-1]), 12), order)
        hit = self._grid_cache.get(key)
        if hit is not None:
            return hit
        out = np.stack(
            [fourier.evaluate(self.coeffs, ts, order=j) for j in range(order + 1)],
            axis=1,
        )
        if len(self._grid_cache) > 16:
            self._grid_cache.clear()
        self._grid_cache[key] = out
        return out

    def __repr__(self):
        return f"ParamCurve(n={self.n}, K={self.K}, model={self.model!r})"


def eval_jet(curve: ParamCurve, t: float, order: int) -> Jet:
    if order < 0:
        raise ValueError("jet order must be nonnegative")
    return Jet(order, curve.jet(t, order))


def _harmonic_row(K: int, m: int, kind: str) -> np.ndarray:
    """Row of length 2K+1 for cos(m t), sin(m t) or the constant 1."""
    row = np.zeros(2 * K + 1, complex)
    if kind == "const":
        row[K] = 1.0
    elif kind == "cos":
        row[K + 2 * m] = 0.5
        row[K - 2 * m] = 0.5
    elif kind == "sin":
        row[K + 2 * m] = -0.5j
        row[K - 2 * m] = 0.5j
    return row


def _trig_convex(n: int) -> np.ndarray:
    if n % 2 == 0:
        k = n // 2
        K = 2 * k
        rows = [_harmonic_row(K, 0, "const")]
        for m in range(1, k + 1):
            rows.append(_harmonic_row(K, m, "cos"))
            rows.append(_harmonic_row(K, m, "sin"))
    else:
        # odd harmonics 1, 3, ..., n: the lift is anti-periodic over pi, and any
        # covector pairing has at most n projective zeros counted with multiplicity
        K = 2 * n
        rows = []
        for m in range(1, n + 1, 2):
            rows.append(_harmonic_row(K, m, "cos"))
            rows.append(_harmonic_row(K, m, "sin"))
    return np.vstack(rows)


def _rational_normal(n: int) -> np.ndarray:
    cos_c = np.zeros(5, complex)
    cos_c[0] = cos_c[4] = 0.5
    sin_c = np.zeros(5, complex)
    sin_c[0] = 0.5j
    sin_c[4] = -0.5j
    rows = []
    for j in range(n + 1):
        acc = np.array([1.0 + 0.0j])
        for _ in range(n - j):
            acc = fourier.convolve(acc, cos_c)
        for _ in range(j):
            acc = fourier.convolve(acc, sin_c)
        rows.append(acc)
    K = max(fourier.halfspan(r) for r in rows)
    return np.vstack([fourier.pad_to(r, K) for r in rows])


def _fourier_matrix(coeff_rows) -> np.ndarray:
    """Rows [a0, a1, b1, a2, b2, ...] meaning a0 + sum a_m cos(mt) + b_m sin(mt)."""
    rows = [np.asarray(r, float) for r in coeff_rows]
    width = max(len(r) for r in rows)
    mmax = (width - 1 + 1) // 2
    K = 2 * max(mmax, 1)
    out = []
    for r in rows:
        acc = np.zeros(2 * K + 1, complex)
        if len(r) > 0:
            acc += r[0] * _harmonic_row(K, 0, "const")
        for m in range(1, mmax + 1):
            ai = 2 * m - 1
            bi = 2 * m
            if ai < len(r) and r[ai]:
                acc += r[ai] * _harmonic_row(K, m, "cos")
            if bi < len(r) and r[bi]:
                acc += r[bi] * _harmonic_row(K, m, "sin")
        out.append(acc)
    return np.vstack(out)


def build_model(model: str, n: int | None = None, coeffs=None) -> ParamCurve:
    """Construct a named curve model.

    trig_convex and rational_normal require n >= 2; fourier requires a
    coefficient matrix with one row per homogeneous coordinate.
    """
    if model == "trig_convex":
        if n is None or n < 2:
            raise ValueError("trig_convex requires n >= 2")
        return ParamCurve(_trig_convex(n), model=f"trig_convex({n})")
    if model == "rational_normal":
        if n is None or n < 2:
            raise ValueError("rational_normal requires n >= 2")
        return ParamCurve(_rational_normal(n), model=f"rational_normal({n})")
    if model == "fourier":
        if coeffs is None:
            raise ValueError("fourier model requires a coefficient matrix")
        c = _fourier_matrix(coeffs)
        if n is not None and c.shape[0] != n + 1:
            raise ValueError("coefficient rows disagree with n")
        return ParamCurve(c, model="fourier")
    raise ValueError(f"unknown model {model!r}")


def perturbed_circle(amplitude: float = 0.3) -> ParamCurve:
    """Circle with a third-harmonic radial wobble: r(t) = 1 + amplitude*cos(3t).

    Convex for small amplitude; beyond roughly 0.1 the curvature changes sign
    and bitangent lines appear, making this the plane negative control.
    """
    a = float(amplitude) / 2.0
    rows = [
        [1.0],
        [0.0, 1.0, 0.0, a, 0.0, 0.0, 0.0, a, 0.0],
        [0.0, 0.0, 1.0, 0.0, -a, 0.0, 0.0, 0.0, a],
    ]
    return build_model("fourier", 2, rows)


def nonconvex_space_curve() -> ParamCurve:
    """A generic but non-convex closed curve in three dimensions.

    The mismatched top harmonic breaks the osculating transversality: some
    tangent line lies inside a distant osculating plane, and suitable points
    see more than three tangent planes.
    """
    rows = [
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    ]
    return build_model("fourier", 3, rows)


def curve_from_spec(spec) -> ParamCurve:
    """Build a curve from a JSON object or a path to one.

    Schema: {"model": "trig_convex"|"rational_normal"|"fourier",
             "n": int, "coeffs": [[...], ...]}  (coeffs only for fourier).
    """
    if isinstance(spec, (str, bytes)):
        with open(spec) as fh:
            spec = json.load(fh)
    if not isinstance(spec, dict) or "model" not in spec:
        raise ValueError("curve spec must be an object with a 'model' key")
    return build_model(spec["model"], spec.get("n"), spec.get("coeffs"))


def dual_curve(curve: ParamCurve, tol: Tolerances = DEFAULT) -> ParamCurve:
    """The osculating-hyperplane curve in the dual space.

    The covector annihilating the order n-1 jet is the generalized cross
    product of the jet rows, a trig polynomial; its coefficients are recovered
    exactly by sampling above the Nyquist rate.  By construction
    <gamma*(t), gamma^(j)(t)> = 0 for j < n.
    """
    n = curve.n
    Kw = n * curve.K
    M = 1
    while M <= 2 * Kw + 2:
        M *= 2
    ts = fourier.sample_grid(M)
    jets = curve.jet_grid(ts, n - 1)          # (M, n, n+1)
    cols = np.arange(n + 1)
    w = np.empty((M, n + 1))
    for i in range(n + 1):
        minor = jets[:, :, cols != i]
        w[:, i] = ((-1.0) ** i) * np.linalg.det(minor)
    scale = np.linalg.norm(w, axis=1)
    if scale.min() < 1e-9 * max(scale.max(), 1e-300):
        raise DegeneracyError("order n-1 jet drops rank somewhere on the curve")
    coeffs = np.vstack([fourier.from_samples(w[:, i], Kw) for i in range(n + 1)])
    return ParamCurve(coeffs, model=f"dual({curve.model})")
