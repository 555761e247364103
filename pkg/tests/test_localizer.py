import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from beaconloc.exceptions import DegenerateGeometry
from beaconloc.linalg import unit
from beaconloc.localizer import (TriangulationInputs, gram_and_projections, solve_distances,
                                 triangulate, triangulate_batch)

from conftest import random_scene_points

S20 = math.sqrt(20)
A1, A2 = np.array([0.0, 2.0, 0.0]), np.array([4.0, 2.0, 0.0])
R1, R2 = np.array([2.0, 0.0, 4.0]) / S20, np.array([-2.0, 0.0, 4.0]) / S20


def rays_to(a1, a2, t):
    return TriangulationInputs(a1, a2, unit(t - a1), unit(t - a2))


def closest_points_bruteforce(a1, r1, a2, r2, center, half=10.0, n=201, rounds=12):
    """Grid search for the ray parameters minimising the gap between two lines."""
    s0, u0 = center
    for _ in range(rounds):
        s = np.linspace(s0 - half, s0 + half, n)
        u = np.linspace(u0 - half, u0 + half, n)
        p = a1 + s[:, None, None] * r1
        q = a2 + u[None, :, None] * r2
        gap = np.sum((p - q) ** 2, axis=-1)
        i, j = np.unravel_index(np.argmin(gap), gap.shape)
        s0, u0 = s[i], u[j]
        half = 4 * half / (n - 1)  # keep two grid cells either side
    return s0, u0


def test_gram_orthogonal():
    inp = TriangulationInputs((0, 0, 0), (4, 0, 0), (1, 0, 0), (0, 1, 0))
    assert gram_and_projections(inp) == (1.0, 0.0, 1.0, 4.0, 0.0)


def test_gram_fig3_midpoint():
    c1, c2, c3, f1, f2 = gram_and_projections(TriangulationInputs(A1, A2, R1, R2))
    assert c1 == pytest.approx(1, rel=1e-15) and c3 == pytest.approx(1, rel=1e-15)
    assert c2 == pytest.approx(12 / 20, rel=1e-15)
    assert f1 == pytest.approx(8 / S20, rel=1e-15)
    assert f2 == pytest.approx(-8 / S20, rel=1e-15)


def test_gram_parallel_rays():
    r = unit([1.0, 2.0, 3.0])
    c1, c2, c3, f1, f2 = gram_and_projections(TriangulationInputs(A1, A2, r, r))
    assert c1 == pytest.approx(c2) == pytest.approx(c3)
    with pytest.raises(DegenerateGeometry):
        solve_distances(c1, c2, c3, f1, f2)


def test_solve_distances_examples():
    d1, d2 = solve_distances(*gram_and_projections(TriangulationInputs(A1, A2, R1, R2)))
    assert d1 == pytest.approx(S20, rel=1e-14) and d2 == pytest.approx(S20, rel=1e-14)
    assert solve_distances(1, 0, 1, 4, 0) == (4.0, 0.0)
    assert solve_distances(1, 0, 1, 2.5, -1.5) == (2.5, 1.5)


def test_triangulate_exact():
    res = triangulate(TriangulationInputs(A1, A2, R1, R2))
    np.testing.assert_allclose(res.t_hat, [2, 2, 4], atol=1e-12)
    assert not res.behind


def test_triangulate_coincident_estimators():
    with pytest.raises(DegenerateGeometry):
        triangulate(TriangulationInputs(A1, A1, R1, R2))


def test_triangulate_skew_rays_against_bruteforce():
    rot = Rotation.from_rotvec([0.01, 0.0, 0.0])
    r1 = rot.apply(R1)
    res = triangulate(TriangulationInputs(A1, A2, r1, R2))
    s, u = closest_points_bruteforce(A1, r1, A2, R2, (4.0, 4.0))
    mid = (A1 + s * r1 + A2 + u * R2) / 2
    np.testing.assert_allclose([res.d1, res.d2], [s, u], atol=1e-6)
    np.testing.assert_allclose(res.t_hat, mid, atol=1e-6)
    # the rays really are skew: the two foot points differ
    assert np.linalg.norm((A1 + res.d1 * r1) - (A2 + res.d2 * R2)) > 1e-3


def test_noiseless_exactness_random(rng):
    for a1, a2, t in random_scene_points(rng, 1000):
        np.testing.assert_allclose(triangulate(rays_to(a1, a2, t)).t_hat, t, rtol=0, atol=1e-9)


def test_midpoint_identity(rng):
    for a1, a2, t in random_scene_points(rng, 50):
        inp = TriangulationInputs(a1, a2, unit(t - a1 + rng.normal(0, 0.05, 3)),
                                  unit(t - a2 + rng.normal(0, 0.05, 3)))
        res = triangulate(inp)
        np.testing.assert_allclose(res.t_hat - (a1 + res.d1 * inp.r1),
                                   -(res.t_hat - (a2 + res.d2 * inp.r2)), atol=1e-12)


def test_least_squares_optimality(rng):
    for a1, a2, t in random_scene_points(rng, 10):
        inp = TriangulationInputs(a1, a2, unit(t - a1 + rng.normal(0, 0.1, 3)),
                                  unit(t - a2 + rng.normal(0, 0.1, 3)))
        res = triangulate(inp)
        a = np.column_stack([inp.r1, inp.r2])
        b = a2 - a1

        def cost(x):
            return np.sum((a @ x - b) ** 2)

        best = cost(np.array([res.d1, -res.d2]))
        # no point of a dense local grid does better
        g = np.linspace(-0.05, 0.05, 41)
        xs = np.stack(np.meshgrid(g, g), -1).reshape(-1, 2) + [res.d1, -res.d2]
        assert min(cost(x) for x in xs) >= best - 1e-12


vecs = st.tuples(*[st.floats(-3, 3)] * 3)


@settings(max_examples=100)
@given(vecs, st.integers(0, 2**32 - 1))
def test_translation_equivariance(offset, seed):
    rng = np.random.default_rng(seed)
    a1, a2, t = random_scene_points(rng, 1)[0]
    r1 = unit(t - a1 + rng.normal(0, 0.05, 3))
    r2 = unit(t - a2 + rng.normal(0, 0.05, 3))
    c = np.array(offset)
    base = triangulate(TriangulationInputs(a1, a2, r1, r2)).t_hat
    moved = triangulate(TriangulationInputs(a1 + c, a2 + c, r1, r2)).t_hat
    np.testing.assert_allclose(moved, base + c, atol=1e-10)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_rotation_equivariance(seed):
    rng = np.random.default_rng(seed)
    a1, a2, t = random_scene_points(rng, 1)[0]
    r1 = unit(t - a1 + rng.normal(0, 0.05, 3))
    r2 = unit(t - a2 + rng.normal(0, 0.05, 3))
    rot = Rotation.random(random_state=rng)
    base = triangulate(TriangulationInputs(a1, a2, r1, r2)).t_hat
    turned = triangulate(TriangulationInputs(*(rot.apply(v) for v in (a1, a2, r1, r2)))).t_hat
    np.testing.assert_allclose(turned, rot.apply(base), atol=1e-10)


def test_behind_flag():
    # second ray points away from the first ray's target
    res = triangulate(TriangulationInputs(A1, A2, R1, -R2))
    assert res.behind


def test_batch_matches_scalar(rng):
    pts = random_scene_points(rng, 20)
    a1, a2, _ = pts[0]
    r1 = np.array([unit(t - a1 + rng.normal(0, 0.02, 3)) for _, _, t in pts])
    r2 = np.array([unit(t - a2 + rng.normal(0, 0.02, 3)) for _, _, t in pts])
    r1[3] = r2[3]  # force one parallel pair
    t_hat, valid = triangulate_batch(a1, a2, r1, r2)
    assert not valid[3] and np.all(np.isnan(t_hat[3]))
    for i in np.flatnonzero(valid):
        np.testing.assert_allclose(t_hat[i], triangulate(TriangulationInputs(a1, a2, r1[i], r2[i])).t_hat,
                                   rtol=0, atol=1e-12)
    assert valid.sum() == 19
