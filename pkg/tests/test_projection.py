"""Hyperplane projection: recursion, merging, and the local model."""

import numpy as np
import pytest

from osculant import (
    check_convex_sampling,
    count_roots,
    project_iterated,
    project_onto_osculating_hyperplane,
    projective,
)
from osculant.curves import nonconvex_space_curve
from osculant.errors import GeometryError


def test_root_count_recursion(trig, rng):
    # dropping k osculating hyperplanes removes exactly k tangencies,
    # for points inside the intersection subspace
    for n in (3, 4, 5):
        c = trig[n]
        for k in (1, 2):
            moments = tuple(rng.uniform(0, 2 * np.pi, size=k))
            pr = project_iterated(c, moments)
            for _ in range(8):
                p = pr.lift_point(rng.standard_normal(pr.curve.n + 1))
                assert count_roots(c, p).total == pr.count_roots(p).total + k


def test_repeated_moment_merges_deeper(trig):
    c = trig[4]
    pr = project_iterated(c, (1.0, 1.0))
    deeper = projective.osculating_subspace(c, 1.0, 2)
    assert pr.ambient.dim == 2
    assert projective.same_subspace(pr.ambient, deeper)


def test_moment_order_is_irrelevant(trig, rng):
    c = trig[4]
    a = project_iterated(c, (0.5, 2.0))
    b = project_iterated(c, (2.0, 0.5))
    assert projective.same_subspace(a.ambient, b.ambient)
    p = a.lift_point(rng.standard_normal(3))
    assert a.count_roots(p).total == b.count_roots(p).total


def test_lift_is_orthonormal(trig):
    pr = project_iterated(trig[5], (0.3, 2.1, 4.4))
    U = pr.lift
    assert U.shape == (3, 6)
    assert np.allclose(U @ U.T, np.eye(3), atol=1e-12)
    v = np.array([1.0, -2.0, 0.5])
    assert np.allclose(pr.push(pr.lift_point(v)), v, atol=1e-12)


def test_projection_preserves_convexity(trig):
    pr = project_iterated(trig[5], (0.7, 3.0))
    report = check_convex_sampling(pr.curve, trials=80, rng=0)
    assert report and report.max_roots_seen <= pr.curve.n


def test_local_model_coefficients(rational):
    """Projecting the degree-n monomial chart at 0 scales x^j by (n-j)/n."""
    for n in (3, 4, 5):
        pr = project_onto_osculating_hyperplane(rational[n], 0.0)

        def chart_coeff(j, h):
            q = pr.lift_point(pr.curve.point(h))
            return q[j] / (q[0] * np.tan(h) ** j)

        for j in range(1, n):
            c1, c2 = chart_coeff(j, 2e-3), chart_coeff(j, 4e-3)
            est = (4.0 * c1 - c2) / 3.0      # kills the h^2 error term
            assert abs(est - (n - j) / n) <= 1e-6 * abs((n - j) / n)


def test_space_curve_projection_degenerates():
    sc = nonconvex_space_curve()
    for tau in (0.0, np.pi):
        with pytest.raises(GeometryError):
            project_onto_osculating_hyperplane(sc, tau)


def test_orthogonal_point_is_rejected(trig):
    c = trig[4]
    pr = project_iterated(c, (1.3,))
    h = projective.osculating_hyperplane(c, 1.3)
    with pytest.raises(GeometryError):
        pr.count_roots(h)


def test_moment_count_limits(trig):
    with pytest.raises(ValueError):
        project_iterated(trig[3], ())
    with pytest.raises(ValueError):
        project_iterated(trig[3], (0.1, 0.2, 0.3))
