"""Coefficient arrays for real trigonometric polynomials on half-integer frequencies.

A function f(t) = sum_k c[k] exp(1j * (k/2) * t), k = -K..K, is stored as the
complex array [c[-K], ..., c[K]].  Working on the k/2 grid keeps functions that
flip sign after one turn (lifts of odd-degree projective curves, deflated
projections) inside a single representation: their spectra sit on odd k.  Real
functions satisfy c[-k] = conj(c[k]).

With u = exp(1j*t/2), f is u**(-K) times a polynomial of degree 2K in u; the
deflation helpers below divide out roots of that polynomial on the unit circle.
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np


def halfspan(coeffs) -> int:
    m = np.shape(coeffs)[-1]
    if m % 2 != 1:
        raise ValueError("coefficient arrays must have odd length")
    return (m - 1) // 2


def frequencies(K: int) -> np.ndarray:
    """Frequencies nu_k = k/2 for k = -K..K."""
    return np.arange(-K, K + 1) * 0.5


def hermitized(coeffs: np.ndarray) -> np.ndarray:
    """Project onto the real-function subspace c[-k] = conj(c[k])."""
    return 0.5 * (coeffs + np.conj(coeffs[..., ::-1]))


def pad_to(coeffs: np.ndarray, K: int) -> np.ndarray:
    extra = K - halfspan(coeffs)
    if extra < 0:
        raise ValueError("cannot shrink by padding")
    if extra == 0:
        return coeffs
    pad = [(0, 0)] * (coeffs.ndim - 1) + [(extra, extra)]
    return np.pad(coeffs, pad)


def trimmed(coeffs: np.ndarray, rel: float = 1e-13) -> np.ndarray:
    """Drop outer frequency bands whose coefficients are negligible."""
    K = halfspan(coeffs)
    flat = coeffs.reshape(-1, 2 * K + 1)
    col = np.abs(flat).max(axis=0)
    thr = rel * (col.max() or 1.0)
    keep = np.nonzero(col > thr)[0]
    if keep.size == 0:
        return coeffs[..., K : K + 1]
    k_new = int(max(K - keep[0], keep[-1] - K, 0))
    return coeffs[..., K - k_new : K + k_new + 1]


# Phase matrices exp(1j * nu_k * t) are reused heavily when counting roots of
# many points against one curve, so keep a small LRU cache.
_PHASE_CACHE: OrderedDict = OrderedDict()
_PHASE_CACHE_MAX = 12


def phase_matrix(ts: np.ndarray, K: int) -> np.ndarray:
    ts = np.asarray(ts, float)
    cacheable = ts.ndim == 1 and ts.shape[0] >= 256
    if cacheable:
        key = (K, ts.shape[0], hash(ts.tobytes()))
        hit = _PHASE_CACHE.get(key)
        if hit is not None:
            _PHASE_CACHE.move_to_end(key)
            return hit
    ph = np.exp(1j * np.multiply.outer(ts, frequencies(K)))
    if cacheable:
        _PHASE_CACHE[key] = ph
        if len(_PHASE_CACHE) > _PHASE_CACHE_MAX:
            _PHASE_CACHE.popitem(last=False)
    return ph


def evaluate(coeffs: np.ndarray, ts, order: int = 0) -> np.ndarray:
    """Values of the order-th derivative at ts.

    coeffs may be 1-d (scalar function) or 2-d (rows = coordinates); the
    result has shape ts.shape (+ (rows,) in the 2-d case, with ts axis first).
    """
    K = halfspan(coeffs)
    c = coeffs * (1j * frequencies(K)) ** order if order else coeffs
    ph = phase_matrix(np.atleast_1d(np.asarray(ts, float)), K)
    vals = np.real(ph @ (c.T if c.ndim == 2 else c))
    if np.ndim(ts) == 0:
        return vals[0]
    return vals


def jet_at(coeffs: np.ndarray, t: float, order: int) -> np.ndarray:
    """Stack of derivatives 0..order at a single parameter, shape (order+1, rows)."""
    K = halfspan(coeffs)
    nu = frequencies(K)
    ph = np.exp(1j * nu * float(t))
    scal = (1j * nu) ** np.arange(order + 1)[:, None]      # (order+1, 2K+1)
    c2 = coeffs if coeffs.ndim == 2 else coeffs[None, :]
    return np.real(np.einsum("ok,rk,k->or", scal, c2, ph))


def sample_grid(M: int) -> np.ndarray:
    """Uniform construction grid over the full 4*pi cycle of the half-frequency lift."""
    return 4.0 * np.pi * np.arange(M) / M


def from_samples(values: np.ndarray, K: int) -> np.ndarray:
    """Recover coefficients on -K..K from values on sample_grid(M), M > 2K.

    Exact (up to roundoff) when the sampled function really is band-limited
    to |k| <= K; the aliasing residual is checked.
    """
    values = np.asarray(values, float)
    M = values.shape[-1]
    if M <= 2 * K:
        raise ValueError("need more than 2K samples")
    X = np.fft.fft(values) / M
    idx = np.arange(-K, K + 1) % M
    out = hermitized(X[..., idx])
    if M > 2 * K + 2:
        inside = np.abs(out).max() or 1.0
        rest = np.delete(X, idx, axis=-1)
        if rest.size and np.abs(rest).max() > 1e-7 * inside:
            raise ValueError("sampled function is not band-limited to the requested span")
    return out


def convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients of the pointwise product; spans add."""
    return np.convolve(a, b)


def deflate_once(asc: np.ndarray, root: complex):
    """Divide sum_j asc[j] u**j by (u - root); return (quotient_asc, |remainder|)."""
    desc = asc[::-1]
    out = np.empty(len(desc) - 1, complex)
    acc = 0.0 + 0.0j
    for i, d in enumerate(desc[:-1]):
        acc = d + root * acc
        out[i] = acc
    rem = desc[-1] + root * acc
    return out[::-1].copy(), abs(rem)


def deflate(asc: np.ndarray, roots, times: int):
    """Divide repeatedly by (u - r) for each root, `times` times each.

    Returns (quotient, max relative remainder).  Large remainders mean the
    function did not actually vanish at the corresponding parameters.
    """
    scale = np.abs(asc).max() or 1.0
    worst = 0.0
    q = np.asarray(asc, complex)
    for _ in range(times):
        for r in roots:
            q, rem = deflate_once(q, r)
            worst = max(worst, rem / scale)
    return q, worst


class TrigPoly:
    """A real trigonometric polynomial with exact derivatives of every order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = np.asarray(coeffs, complex)
        if coeffs.ndim != 1:
            raise ValueError("scalar coefficients must be 1-d")
        self.coeffs = hermitized(coeffs)

    @property
    def K(self) -> int:
        return halfspan(self.coeffs)

    def __call__(self, t, order: int = 0):
        return evaluate(self.coeffs, t, order)

    def deriv(self, order: int = 1) -> "TrigPoly":
        c = self.coeffs * (1j * frequencies(self.K)) ** order
        return TrigPoly(c)

    def sample(self, ts: np.ndarray, order: int = 0) -> np.ndarray:
        return evaluate(self.coeffs, ts, order)
