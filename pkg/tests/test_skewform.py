import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import cofactor_det, random_rotation
from qubit_structure.skewform import (InvalidTransformation, conjugation_residual,
                                      enforce_rotation, is_rotation, theta,
                                      triple_product)

finite = st.floats(-1e3, 1e3, allow_nan=False)
vec3 = arrays(np.float64, 3, elements=finite)


def test_theta_examples():
    np.testing.assert_array_equal(theta([1, 0, 0]), [[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    np.testing.assert_array_equal(theta([0, 0, 0]), np.zeros((3, 3)))
    np.testing.assert_array_equal(theta([1, 2, 3]), [[0, 3, -2], [-3, 0, 1], [2, -1, 0]])


def test_theta_rejects_wrong_length():
    with pytest.raises(ValueError):
        theta([1, 2])


@given(vec3)
def test_theta_is_skew_and_annihilates_its_vector(b):
    T = theta(b)
    assert np.array_equal(T + T.T, np.zeros((3, 3)))
    # matmul may fuse multiply-adds, so zero only up to rounding
    assert np.max(np.abs(b @ T)) <= 4e-16 * np.max(np.abs(b)) ** 2


def test_triple_product_examples():
    e = np.eye(3)
    assert triple_product(e[0], e[1], e[2]) == -1.0
    assert triple_product(e[0], e[0], e[2]) == 0.0


def test_triple_product_matches_cofactor_det(rng):
    for _ in range(1000):
        M = rng.uniform(-3, 3, size=(3, 3))
        assert abs(triple_product(M[:, 0], M[:, 1], M[:, 2]) + cofactor_det(M)) <= 1e-10


def test_is_rotation_examples():
    assert is_rotation(np.eye(3))
    assert not is_rotation(np.diag([1.0, 1.0, -1.0]))
    assert is_rotation([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
    with pytest.raises(ValueError):
        is_rotation(np.eye(3), tol=0)


def test_enforce_rotation_examples(rng):
    np.testing.assert_array_equal(enforce_rotation(np.eye(3)), np.eye(3))
    np.testing.assert_array_equal(enforce_rotation(np.diag([1.0, 1.0, -1.0])),
                                  [[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    for _ in range(20):
        R = random_rotation(rng)
        np.testing.assert_array_equal(enforce_rotation(R), R)


def test_enforce_rotation_negate_mode():
    T = enforce_rotation(np.diag([1.0, 1.0, -1.0]), method="negate")
    np.testing.assert_array_equal(T, np.diag([-1.0, 1.0, -1.0]))


def test_enforce_rotation_rejects_non_orthogonal():
    with pytest.raises(InvalidTransformation):
        enforce_rotation(np.diag([1.0, 2.0, 1.0]))


@settings(max_examples=50)
@given(arrays(np.float64, (3, 3), elements=st.floats(-1, 1)))
def test_enforce_rotation_output_is_rotation(M):
    Q, _ = np.linalg.qr(M + 3 * np.eye(3))
    assert is_rotation(enforce_rotation(Q))


def test_conjugation_identity_holds_for_rotations_only(rng):
    for _ in range(20):
        R = random_rotation(rng)
        for b in rng.uniform(-2, 2, size=(100, 3)):
            assert conjugation_residual(R, b) <= 1e-10
    refl = np.diag([1.0, 1.0, -1.0])
    assert conjugation_residual(refl, [0.3, -0.7, 1.1]) > 0.1
