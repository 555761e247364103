import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from beaconloc.aoa import optimal_normals
from beaconloc.exceptions import RankDeficient, SingularMatrix
from beaconloc.linalg import mat2_inverse, pseudo_left_inverse, vec3

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("m, expected", [
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ([[1, 0], [0, 2]], [[1, 0], [0, 0.5]]),
    # adjugate by hand: det = 0.75, adj = [[1, -0.5], [-0.5, 1]]
    ([[1, 0.5], [0.5, 1]], [[4 / 3, -2 / 3], [-2 / 3, 4 / 3]]),
])
def test_mat2_inverse_examples(m, expected):
    np.testing.assert_allclose(mat2_inverse(m), expected, rtol=0, atol=1e-15)


def test_mat2_inverse_singular():
    with pytest.raises(SingularMatrix):
        mat2_inverse([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrix):
        mat2_inverse([[1e-7, 0], [0, 1e-6]])
    mat2_inverse([[1e-7, 0], [0, 1e-6]], threshold=1e-14)


@settings(max_examples=200)
@given(arrays(float, (2, 2), elements=finite))
def test_mat2_inverse_round_trip(m):
    if np.linalg.cond(m) > 1e4 or abs(np.linalg.det(m)) < 1e-3:
        return
    inv = mat2_inverse(m)
    np.testing.assert_allclose(m @ inv, np.eye(2), atol=1e-10)
    np.testing.assert_allclose(inv @ m, np.eye(2), atol=1e-10)


def test_pseudo_left_inverse_orthonormal_rows():
    v = np.vstack([np.eye(3), [0, 0, 1]])
    np.testing.assert_allclose(pseudo_left_inverse(v) @ v, np.eye(3), atol=1e-15)


def test_pseudo_left_inverse_of_optimal_normals():
    v = optimal_normals()
    # V^T V = 4/3 I, so the left inverse is 3/4 V^T
    np.testing.assert_allclose(v.T @ v, 4 / 3 * np.eye(3), rtol=0, atol=1e-12)
    np.testing.assert_allclose(pseudo_left_inverse(v), 0.75 * v.T, rtol=0, atol=1e-12)


def test_pseudo_left_inverse_scale():
    v = optimal_normals()
    np.testing.assert_allclose(pseudo_left_inverse(2 * v), 0.5 * pseudo_left_inverse(v),
                               atol=1e-15)


def test_pseudo_left_inverse_rank_deficient():
    coplanar = np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]], float)
    with pytest.raises(RankDeficient):
        pseudo_left_inverse(coplanar)
    with pytest.raises(RankDeficient):
        pseudo_left_inverse(np.zeros((4, 3)))


@settings(max_examples=200)
@given(arrays(float, (4, 3), elements=finite))
def test_pseudo_left_inverse_property(v):
    if np.linalg.cond(v) > 1e4:
        return
    np.testing.assert_allclose(pseudo_left_inverse(v) @ v, np.eye(3), atol=1e-10)


def test_vec3_validation():
    np.testing.assert_array_equal(vec3([1, 2, 3]), [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        vec3([1, 2])
    with pytest.raises(ValueError):
        vec3([np.nan, 0, 0])
    with pytest.raises(ValueError):
        vec3([1, 1, 0], unit=True)
    vec3([0, 0, -1], unit=True)
