"""Skew-symmetric map on R^3 and rotation-matrix helpers."""

import numpy as np

DEFAULT_TOL = 1e-9


class InvalidTransformation(ValueError):
    """Raised when a candidate coordinate transformation is not orthogonal."""


def as_vec3(v, name="vector"):
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have exactly 3 entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def theta(beta):
    """
    Skew-symmetric matrix associated with a real 3-vector.

    Rows are ``[0, b3, -b2]``, ``[-b3, 0, b1]``, ``[b2, -b1, 0]``, so that
    ``theta(b) @ x == np.cross(x, b)``.
    """
    b1, b2, b3 = as_vec3(beta, "beta")
    return np.array([[0.0, b3, -b2],
                     [-b3, 0.0, b1],
                     [b2, -b1, 0.0]])


def triple_product(m1, m2, m3):
    """Return ``m1^T theta(m2) m3``, which equals ``-det([m1 m2 m3])``."""
    return float(as_vec3(m1) @ theta(m2) @ as_vec3(m3))


def max_abs(M):
    M = np.asarray(M, dtype=float)
    return float(np.max(np.abs(M))) if M.size else 0.0


def is_rotation(T, tol=DEFAULT_TOL):
    if tol <= 0:
        raise ValueError("tol must be positive")
    T = np.asarray(T, dtype=float)
    if T.shape != (3, 3) or not np.all(np.isfinite(T)):
        return False
    ortho = max_abs(T.T @ T - np.eye(3)) <= tol
    return bool(ortho and np.linalg.det(T) >= 1.0 - tol)


def enforce_rotation(T, tol=DEFAULT_TOL, method="swap"):
    """
    Turn an orthogonal matrix into a rotation.

    Parameters
    ----------
    T : (3, 3) array_like
        Orthogonal matrix.
    tol : float
        Orthogonality tolerance on ``max|T^T T - I|``.
    method : {"swap", "negate"}
        How to repair ``det(T) = -1``: exchange the first two columns
        (default) or flip the sign of the first column. Both keep the
        spans of ``T[:, :2]`` and ``T[:, 2]``.

    Returns
    -------
    T : (3, 3) ndarray
        A copy with determinant +1.
    """
    T = np.array(T, dtype=float)
    if T.shape != (3, 3):
        raise InvalidTransformation(f"expected a 3x3 matrix, got shape {T.shape}")
    resid = max_abs(T.T @ T - np.eye(3))
    if not np.isfinite(resid) or resid > tol:
        raise InvalidTransformation(
            f"candidate is not orthogonal: max|T^T T - I| = {resid:.3e}")
    if np.linalg.det(T) < 0:
        if method == "swap":
            T[:, [0, 1]] = T[:, [1, 0]]
        elif method == "negate":
            T[:, 0] = -T[:, 0]
        else:
            raise ValueError(f"unknown method {method!r}")
    return T


def conjugation_residual(T, beta):
    """``max|theta(T^T b) - T^T theta(b) T|``; zero for rotations."""
    T = np.asarray(T, dtype=float)
    b = as_vec3(beta)
    return max_abs(theta(T.T @ b) - T.T @ theta(b) @ T)


def cross_norm(u, v):
    """Norm of ``u x v``, via the skew map."""
    return float(np.linalg.norm(theta(v) @ np.asarray(u, dtype=float)))
