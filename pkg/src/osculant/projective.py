"""Points, subspaces and osculating flags of curves in real projective space.

Subspaces are stored by orthonormal spanning rows of their linear lift in
R^(n+1); projective dimension is one less than the number of rows, and the
empty intersection is the subspace with zero rows (dimension -1).  All rank
decisions use singular values with a relative cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DegeneracyError


def _as_vec(p) -> np.ndarray:
    v = np.asarray(getattr(p, "coords", p), float)
    if v.ndim != 1:
        raise ValueError("expected a single coordinate vector")
    return v


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^n by a homogeneous representative (never the zero vector)."""

    coords: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.coords, float)
        if v.ndim != 1 or v.shape[0] < 2:
            raise ValueError("homogeneous coordinates need at least two entries")
        if not np.all(np.isfinite(v)):
            raise ValueError("coordinates must be finite")
        if np.linalg.norm(v) == 0.0:
            raise ValueError("the zero vector is not a projective point")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "coords", v)

    @property
    def n(self) -> int:
        return self.coords.shape[0] - 1

    def normalized(self) -> "ProjPoint":
        return normalize(self.coords)

    def same_as(self, other, tol: float = 1e-9) -> bool:
        a = normalize(self.coords).coords
        b = normalize(_as_vec(other)).coords
        return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b))) <= tol


def normalize(raw) -> ProjPoint:
    """Canonical representative: unit norm, first significant entry positive."""
    v = _as_vec(raw)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    v = v / nrm
    lead = np.nonzero(np.abs(v) > 1e-12)[0]
    if lead.size and v[lead[0]] < 0:
        v = -v
    return ProjPoint(v)


@dataclass(frozen=True)
class Jet:
    """Derivatives 0..order of a curve at one parameter, one row per order."""

    order: int
    derivs: np.ndarray

    def row(self, j: int) -> np.ndarray:
        return self.derivs[j]


@dataclass(frozen=True)
class Subspace:
    """A projective subspace by orthonormal spanning rows of its linear lift."""

    basis: np.ndarray
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        b = np.asarray(self.basis, float)
        if b.ndim != 2:
            raise ValueError("basis must be a matrix (rows are spanning vectors)")
        amb = b.shape[1] - 1 if self.ambient_dim < 0 else self.ambient_dim
        if b.shape[1] != amb + 1:
            raise ValueError("basis width disagrees with ambient dimension")
        b = b.copy()
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "ambient_dim", amb)

    @classmethod
    def from_vectors(cls, vectors, tol: Tolerances = DEFAULT) -> "Subspace":
        """Orthonormalize spanning vectors; rejects dependent input."""
        vmat = np.atleast_2d(np.asarray(vectors, float))
        q = _row_space(vmat, tol.rank_rel)
        if q.shape[0] != vmat.shape[0]:
            raise ValueError("spanning vectors are linearly dependent at tolerance")
        return cls(q, vmat.shape[1] - 1)

    @classmethod
    def empty(cls, ambient_dim: int) -> "Subspace":
        return cls(np.zeros((0, ambient_dim + 1)), ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(np.eye(ambient_dim + 1), ambient_dim)

    @property
    def dim(self) -> int:
        return self.basis.shape[0] - 1

    def contains(self, p, tol: Tolerances = DEFAULT) -> bool:
        v = _as_vec(p)
        nrm = np.linalg.norm(v)
        if nrm == 0.0:
            raise ValueError("zero vector")
        if self.basis.shape[0] == 0:
            return False
        res = v - self.basis.T @ (self.basis @ v)
        return float(np.linalg.norm(res)) <= tol.member_rel * nrm

    def annihilator(self) -> np.ndarray:
        """Orthonormal rows spanning the covectors that vanish on this subspace."""
        m = self.ambient_dim + 1
        if self.basis.shape[0] == 0:
            return np.eye(m)
        _, s, vt = np.linalg.svd(self.basis, full_matrices=True)
        return vt[self.basis.shape[0]:]

    def spanning_point(self) -> ProjPoint:
        if self.dim != 0:
            raise ValueError("spanning_point requires a zero-dimensional subspace")
        return normalize(self.basis[0])


def _row_space(mat: np.ndarray, rank_rel: float) -> np.ndarray:
    """Orthonormal basis of the row space; rows are pre-normalized for conditioning."""
    mat = np.atleast_2d(np.asarray(mat, float))
    if mat.shape[0] == 0:
        return mat
    nrm = np.linalg.norm(mat, axis=1, keepdims=True)
    if np.any(nrm == 0.0):
        raise ValueError("zero row in spanning set")
    _, s, vt = np.linalg.svd(mat / nrm)
    rank = int(np.sum(s > rank_rel * s[0])) if s.size else 0
    return vt[:rank]


def rank_at(mat: np.ndarray, rank_rel: float) -> int:
    mat = np.atleast_2d(np.asarray(mat, float))
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > rank_rel * s[0]))


def intersect(subspaces, tol: Tolerances = DEFAULT) -> Subspace:
    """Intersection of projective subspaces; empty intersection has dim -1.

    Computed as the joint nullspace of the stacked annihilators, so the result
    is symmetric in the input order up to an orthonormal change of basis.
    """
    subs = list(subspaces)
    if not subs:
        raise ValueError("need at least one subspace")
    amb = subs[0].ambient_dim
    if any(s.ambient_dim != amb for s in subs):
        raise ValueError("mixed ambient dimensions")
    ann = np.vstack([s.annihilator() for s in subs])
    if ann.shape[0] == 0:
        return Subspace.full(amb)
    _, s, vt = np.linalg.svd(ann)
    rank = int(np.sum(s > tol.rank_rel * s[0])) if s.size else 0
    null = vt[rank:]
    if null.shape[0] == 0:
        return Subspace.empty(amb)
    return Subspace(null, amb)


def eval_jet(curve, t: float, order: int) -> Jet:
    """Jet of the curve at t.  Derivatives of every order exist for these models."""
    if order < 0:
        raise ValueError("jet order must be nonnegative")
    return Jet(order, curve.jet(t, order))


def osculating_subspace(curve, t: float, k: int, tol: Tolerances = DEFAULT) -> Subspace:
    """Span of the derivatives 0..k at t: the codimension n-k osculating subspace."""
    n = curve.n
    if not 0 <= k <= n:
        raise ValueError(f"osculating order k must lie in 0..{n}")
    rows = curve.jet(t, k)
    q = _row_space(rows, tol.rank_rel)
    if q.shape[0] != k + 1:
        raise DegeneracyError(f"jet of order {k} at t={t} has rank {q.shape[0]}")
    return Subspace(q, n)


def osculating_hyperplane(curve, t: float, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Unit covector of the osculating hyperplane at t (sign canonicalized)."""
    sub = osculating_subspace(curve, t, curve.n - 1, tol)
    h = sub.annihilator()[0]
    lead = np.nonzero(np.abs(h) > 1e-12)[0]
    if lead.size and h[lead[0]] < 0:
        h = -h
    return h


def merge_moments(moments, period: float, tol: Tolerances = DEFAULT):
    """Group parameter values that coincide up to tolerance on the circle.

    Returns [(representative, multiplicity), ...] sorted by representative in
    [0, period).  Coincident moments are merged *before* any intersection is
    formed, so r copies of t contribute the codimension-r osculating subspace.
    """
    ts = sorted(float(t) % period for t in moments)
    if not ts:
        return []
    groups: list[list[float]] = [[ts[0]]]
    for t in ts[1:]:
        if t - groups[-1][-1] <= tol.merge:
            groups[-1].append(t)
        else:
            groups.append([t])
    # wraparound: last group may touch the first across period
    if len(groups) > 1 and (groups[0][0] + period) - groups[-1][-1] <= tol.merge:
        groups[0] = [t - period for t in groups[-1]] + groups[0]
        groups.pop()
    return [(float(np.mean(g)) % period, len(g)) for g in groups]


def osculating_intersection(curve, moments, tol: Tolerances = DEFAULT) -> Subspace:
    """Intersection of osculating subspaces for a multiset of moments.

    Each moment of multiplicity r contributes the codimension-r osculating
    subspace at its parameter; for total multiplicity n on a convex curve the
    result is a single point.
    """
    n = curve.n
    merged = merge_moments(moments, curve.projective_period, tol)
    if not merged:
        raise ValueError("need at least one moment")
    if sum(r for _, r in merged) > n:
        raise ValueError("total multiplicity exceeds the ambient dimension")
    subs = [osculating_subspace(curve, t, n - r, tol) for t, r in merged]
    return intersect(subs, tol)


def same_subspace(a: Subspace, b: Subspace, tol: Tolerances = DEFAULT) -> bool:
    if a.ambient_dim != b.ambient_dim or a.dim != b.dim:
        return False
    if a.dim < 0:
        return True
    stacked = np.vstack([a.basis, b.basis])
    return rank_at(stacked, tol.rank_rel) == a.basis.shape[0]
