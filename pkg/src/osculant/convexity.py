"""Convexity certificates for closed curves in projective space.

A closed curve is convex when every hyperplane meets it with total
multiplicity at most n.  Two computable shadows of that property are
implemented here: a root-count bound over random points, and transversality
of osculating-subspace intersections over moment tuples.  Sampling can only
certify failure, so a passing report means "no violation found at the stated
trial count", never a proof.

The intersection criterion gets a second, deterministic phase: violations
such as bitangent hyperplanes live on measure-zero subsets of the moment
torus, which random tuples miss almost surely.  A coarse scan of two-part
compositions over a moment grid followed by local minimization of the
smallest stacked singular value finds them reliably.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.optimize import minimize

from . import projective
from .config import DEFAULT, Tolerances
from .errors import PrecisionError
from .tangency import count_roots

PAIR_SCAN_GRID = 96
_SIGMA_VIOLATION = 1e-7


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of a convexity check; a failing verdict carries a witness."""

    verdict: bool
    trials: int
    max_roots_seen: int | None = None
    witness: Any = None
    notes: str = ""

    def __bool__(self) -> bool:
        return self.verdict


def check_convex_sampling(curve, trials: int = 1000, rng=None,
                          tol: Tolerances = DEFAULT) -> ConvexityReport:
    """Test the root-count bound over random points of projective space.

    Points are drawn from the rotation-invariant distribution (normalized
    Gaussian vectors).  Any point with more than n tangent hyperplanes
    counted with multiplicity disproves convexity and is returned as the
    witness.  Points that defeat the root counter are redrawn, with a cap
    of 5 percent of the requested trials.
    """
    rng = np.random.default_rng(rng)
    n = curve.n
    retry_cap = max(5, trials // 20)
    retries = 0
    max_seen = 0
    done = 0
    while done < trials:
        p = rng.standard_normal(n + 1)
        try:
            rc = count_roots(curve, p, tol)
        except PrecisionError:
            retries += 1
            if retries > retry_cap:
                raise
            continue
        done += 1
        max_seen = max(max_seen, rc.total)
        if rc.total > n:
            return ConvexityReport(
                False, done, max_seen,
                witness={"point": tuple(float(x) for x in p),
                         "total": rc.total,
                         "tangencies": rc.tangencies},
                notes=f"found a point with {rc.total} > {n} "
                      "tangent hyperplanes",
            )
    return ConvexityReport(True, done, max_seen,
                           notes=f"no violation found in {done} trials")


def _random_composition(n: int, rng) -> tuple[int, ...]:
    r = int(rng.integers(1, n + 1))
    if r == 1:
        return (n,)
    cuts = np.sort(rng.choice(np.arange(1, n), size=r - 1, replace=False))
    return tuple(int(x) for x in np.diff(np.concatenate(([0], cuts, [n]))))

def _separated_moments(r: int, period: float, sep: float, rng) -> np.ndarray:
    for _ in range(200):
        ms = np.sort(rng.uniform(0.0, period, size=r))
        if r == 1:
            return ms
        gaps = np.diff(np.concatenate((ms, [ms[0] + period])))
        if gaps.min() >= sep:
            return ms
    raise PrecisionError("could not draw a separated moment tuple")


def _stacked_annihilators(curve, parts, moments, tol) -> np.ndarray:
    rows = [
        projective.osculating_subspace(curve, float(t), curve.n - k, tol)
        .annihilator()
        for k, t in zip(parts, moments)
    ]
    return np.vstack(rows)


def _criterion_sigma(curve, parts, moments, tol) -> float:
    """Smallest singular value of the stacked annihilator system.

    The intersection of the osculating subspaces is a single point exactly
    when the n stacked annihilator rows have full rank, so this value is the
    margin of the transversality statement.
    """
    stacked = _stacked_annihilators(curve, parts, moments, tol)
    return float(np.linalg.svd(stacked, compute_uv=False)[-1])


def _intersection_dim_stable(curve, parts, moments, tol) -> int:
    subs = [
        projective.osculating_subspace(curve, float(t), curve.n - k, tol)
        for k, t in zip(parts, moments)
    ]
    dim = projective.intersect(subs, tol).dim
    loose = tol.with_overrides(rank_rel=10 * tol.rank_rel)
    dim10 = projective.intersect(subs, loose).dim
    if dim != dim10:
        raise PrecisionError(
            f"intersection dimension flips from {dim} to {dim10} under a "
            f"10x rank tolerance at moments {tuple(moments)}"
        )
    return dim


def _circular_gap(a: float, b: float, period: float) -> float:
    d = abs(a - b) % period
    return min(d, period - d)


def _pair_scan(curve, tol):
    """Deterministic sweep for rank drops of two-part intersections.

    Near the diagonal the two subspaces mathematically collapse onto each
    other (up to cubically in the gap), so moments closer than 5 percent of
    the period are excluded; violations at shorter range reveal themselves
    to the sampling bound instead.  A candidate only becomes a witness if
    the refined minimum is a certified rank drop: tiny smallest singular
    value and a tolerance-stable nonzero intersection dimension.
    """
    n = curve.n
    period = curve.projective_period
    scan_sep = max(0.05 * period, tol.moment_sep * period)
    grid = np.arange(PAIR_SCAN_GRID) * (period / PAIR_SCAN_GRID)
    anns: dict[int, list[np.ndarray]] = {}

    def ann_list(k: int) -> list[np.ndarray]:
        if k not in anns:
            anns[k] = [
                projective.osculating_subspace(curve, float(t), n - k, tol)
                .annihilator()
                for t in grid
            ]
        return anns[k]

    for k1 in range(1, n):
        parts = (k1, n - k1)
        A, B = ann_list(k1), ann_list(n - k1)
        sig = np.full((PAIR_SCAN_GRID, PAIR_SCAN_GRID), np.inf)
        for i, t1 in enumerate(grid):
            for j, t2 in enumerate(grid):
                if _circular_gap(t1, t2, period) < scan_sep:
                    continue
                stacked = np.vstack((A[i], B[j]))
                sig[i, j] = np.linalg.svd(stacked, compute_uv=False)[-1]
        trigger = 0.15 * np.median(sig[np.isfinite(sig)])
        neighborhood = np.stack([
            np.roll(np.roll(sig, di, axis=0), dj, axis=1)
            for di in (-1, 0, 1) for dj in (-1, 0, 1)
            if (di, dj) != (0, 0)
        ])
        local_min = sig <= neighborhood.min(axis=0)
        order = np.argsort(np.where(local_min, sig, np.inf), axis=None)
        for flat in order[:12]:
            i, j = np.unravel_index(flat, sig.shape)
            if sig[i, j] > trigger:
                break
            res = minimize(
                lambda x: _criterion_sigma(curve, parts, x, tol)
                if _circular_gap(x[0], x[1], period) >= scan_sep else 1.0,
                x0=np.array([grid[i], grid[j]]),
                method="Nelder-Mead",
                options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 400},
            )
            if res.fun >= _SIGMA_VIOLATION:
                continue
            t1, t2 = (float(x % period) for x in res.x)
            try:
                dim = _intersection_dim_stable(curve, parts, (t1, t2), tol)
            except PrecisionError:
                continue
            if dim != 0:
                return {
                    "composition": parts,
                    "moments": (t1, t2),
                    "sigma_min": float(res.fun),
                    "dim": dim,
                }
    return None


def check_convex_criterion(curve, samples: int = 500, rng=None,
                           tol: Tolerances = DEFAULT,
                           pair_scan: bool = True) -> ConvexityReport:
    """Transversality of osculating-subspace intersections.

    For random compositions (k_1, ..., k_r) of n and separated moment
    tuples, the intersection of the subspaces of codimension k_i at t_i
    must be a single point.  The rank decision must hold at the working
    tolerance and at ten times the working tolerance, otherwise a precision
    error is raised.  A deterministic pair scan then hunts for the
    measure-zero violations random tuples cannot see.
    """
    rng = np.random.default_rng(rng)
    n = curve.n
    period = curve.projective_period
    sep = tol.moment_sep * period
    for _ in range(samples):
        parts = _random_composition(n, rng)
        moments = _separated_moments(len(parts), period, sep, rng)
        dim = _intersection_dim_stable(curve, parts, moments, tol)
        if dim != 0:
            return ConvexityReport(
                False, samples,
                witness={"composition": parts,
                         "moments": tuple(float(t) for t in moments),
                         "dim": dim},
                notes="osculating intersection is not a point",
            )
    if pair_scan:
        witness = _pair_scan(curve, tol)
        if witness is not None:
            return ConvexityReport(
                False, samples, witness=witness,
                notes="pair scan found a rank drop",
            )
    scanned = " plus a deterministic pair scan" if pair_scan else ""
    return ConvexityReport(
        True, samples,
        notes=f"all {samples} random intersections are points{scanned}")
