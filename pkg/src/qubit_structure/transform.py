"""Rotation synthesis for the structural decomposition and its validation."""

from dataclasses import dataclass, field

import numpy as np

from .model import SystemMatrices
from .skewform import (DEFAULT_TOL, conjugation_residual, enforce_rotation,
                       max_abs, theta)
from .structure import CaseLabel, Family, numerical_rank


class DecompositionError(RuntimeError):
    """The transformed matrices do not follow the template of the case."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


@dataclass(frozen=True)
class Decomposition:
    T: np.ndarray
    A0t: np.ndarray
    At: np.ndarray
    Bt: np.ndarray
    Ct: np.ndarray
    case: CaseLabel
    block_split: int
    source: SystemMatrices = field(repr=False)
    recipe: str = "identity"

    @property
    def Bt1(self):
        return self.Bt[:, :3]

    @property
    def Bt2(self):
        return self.Bt[:, 3:]

    def to_dict(self):
        return {"T": self.T.tolist(), "A0t": self.A0t.tolist(),
                "At": self.At.tolist(), "Bt": self.Bt.tolist(),
                "Ct": self.Ct.tolist(), "block_split": self.block_split,
                "recipe": self.recipe}


def apply_transformation(m, T):
    """Matrices in the coordinates ``X~ = T^T X``."""
    T = np.asarray(T, dtype=float)
    TT = np.zeros((6, 6))
    TT[:3, :3] = T
    TT[3:, 3:] = T
    return (T.T @ m.A0, T.T @ m.A @ T, T.T @ m.B @ TT, m.C @ T)


def _positive_max(v):
    """Flip ``v`` so that its first largest-magnitude entry is positive."""
    a = np.abs(v)
    k = int(np.flatnonzero(a >= a.max() * (1.0 - 1e-12))[0])
    return v if v[k] >= 0 else -v


def _split_basis(M, tol):
    """
    Orthonormal ``[U1 | U2]`` with ``Range(U1) = Range(M)`` (rank 2).

    Columns of U1 follow descending singular value. The two singular values
    of a skew map are always equal, so for (near) ties U1 is rebuilt from the
    projection of the first standard basis vector with the largest
    component in the range, which makes the choice independent of LAPACK.
    """
    M = np.asarray(M, dtype=float)
    if numerical_rank(M, tol) != 2:
        raise DecompositionError(
            f"expected a rank-2 matrix for the SVD recipe, got rank "
            f"{numerical_rank(M, tol)}")
    U, s, _ = np.linalg.svd(M, full_matrices=True)
    normal = _positive_max(U[:, 2])
    if s[0] - s[1] <= np.sqrt(tol) * s[0]:
        P = U[:, :2] @ U[:, :2].T
        d = np.diag(P)
        k = int(np.flatnonzero(d >= d.max() - 1e-12)[0])
        u1 = P[:, k] / np.linalg.norm(P[:, k])
    else:
        u1 = _positive_max(U[:, 0])
    u2 = _positive_max(np.cross(normal, u1))
    return np.column_stack([u1, u2, normal])


def _alpha_is_zero(params, tol):
    scale = max(np.linalg.norm(params.alpha), np.linalg.norm(params.c1),
                np.linalg.norm(params.c2))
    return np.linalg.norm(params.alpha) <= tol * scale


def _recipe(params, m, case, tol):
    f = case.family
    pattern = case.pattern
    if f in (Family.CLOSED_SYSTEM, Family.GENERAL_I) or pattern == "i":
        return "identity", np.eye(3), 3
    if f is Family.GENERAL_II:
        if _alpha_is_zero(params, tol):
            return "svd(C^T)", _split_basis(m.C.T, tol), 2
        return "svd(theta(alpha))", _split_basis(theta(params.alpha), tol), 2
    if pattern == "ii":
        return "svd(theta(alpha))", _split_basis(theta(params.alpha), tol), 2
    # pattern iii: the coupling vector carries the uncontrollable direction
    c = params.c2 if f is Family.MIRRORED_SPECIAL else params.c1
    name = "svd(theta(c2))" if f is Family.MIRRORED_SPECIAL else "svd(theta(c1))"
    return name, _split_basis(theta(c), tol), 2


def template_masks(case):
    """
    Boolean masks of entries that must vanish in ``(A0t, At, Bt, Ct)``.

    Rows/columns use 0-based indices; the decoupled coordinate is the last.
    """
    a0 = np.zeros(3, bool)
    A = np.zeros((3, 3), bool)
    B = np.zeros((3, 6), bool)
    C = np.zeros((2, 3), bool)
    f, p = case.family, case.pattern
    mirrored = f is Family.MIRRORED_SPECIAL
    single = f in (Family.SPECIAL_I, Family.SPECIAL_II, Family.SPECIAL_III) or mirrored
    # row of C and half of B that vanish identically with a single coupling
    dead_row, dead_block = (0, slice(3, 6)) if mirrored else (1, slice(0, 3))
    live_row = 1 - dead_row

    if f is Family.CLOSED_SYSTEM:
        a0[:] = True
        B[:] = True
        C[:] = True
        return {"A0t": a0, "At": A, "Bt": B, "Ct": C}
    if single:
        a0[:] = True
        B[:, dead_block] = True
        C[dead_row, :] = True
    if p in ("i", "ii", "iii") and not single:
        a0[:] = True  # c2 parallel to c1 gives A0 = c1 x c2 = 0
    if f is Family.GENERAL_II or p == "ii":
        A[:2, 2] = A[2, :2] = True
        if f is Family.GENERAL_II:
            a0[:2] = True
            C[:, 2] = True
        else:
            C[live_row, 2] = True
            if not single:
                C[:, 2] = True
    if p == "iii":
        A[2, :] = A[:, 2] = True
        B[2, :] = True
        if single:
            C[live_row, :2] = True
        else:
            C[:, :2] = True
    return {"A0t": a0, "At": A, "Bt": B, "Ct": C}


def _template_residuals(d):
    masks = template_masks(d.case)
    mats = {"A0t": d.A0t, "At": d.At, "Bt": d.Bt, "Ct": d.Ct}
    out = {}
    for key, mask in masks.items():
        vals = np.abs(mats[key][mask])
        out[key] = float(vals.max()) if vals.size else 0.0
    mu = d.case.mu
    if d.case.family in (Family.GENERAL_IIIA, Family.GENERAL_IIIB,
                         Family.GENERAL_IIIC):
        # B1 = theta(c2) = mu theta(c1) = -mu B2, and c2 = mu c1
        out["Bt_proportional"] = max_abs(d.Bt1 + mu * d.Bt2)
        out["Ct_proportional"] = max_abs(d.Ct[1] - mu * d.Ct[0])
    return out


def _template_threshold(d, tol):
    return tol * (1.0 + max_abs(d.source.A))


def construct_transformation(params, m, case, tol=DEFAULT_TOL):
    """
    Build the rotation ``T`` for ``case`` and the transformed matrices.

    Raises
    ------
    DecompositionError
        If the transformed matrices break the zero pattern of the case.
    """
    recipe, T, split = _recipe(params, m, case, tol)
    # negating column 1 keeps both column spans and the template intact
    T = enforce_rotation(T, tol=max(tol, 1e-12), method="negate")
    A0t, At, Bt, Ct = apply_transformation(m, T)
    d = Decomposition(T=T, A0t=A0t, At=At, Bt=Bt, Ct=Ct, case=case,
                      block_split=split, source=m, recipe=recipe)
    resid = _template_residuals(d)
    limit = _template_threshold(d, tol)
    bad = {k: v for k, v in resid.items() if v > limit}
    if bad:
        raise DecompositionError(
            f"{case.family.value} template violated (limit {limit:.3e}): "
            + ", ".join(f"{k}={v:.3e}" for k, v in bad.items()), resid)
    return d


@dataclass
class ValidationReport:
    residuals: dict
    thresholds: dict

    @property
    def checks(self):
        return {k: self.residuals[k] <= self.thresholds[k] for k in self.residuals}

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return {k: self.residuals[k] for k, ok in self.checks.items() if not ok}

    def to_dict(self):
        return {"passed": self.passed,
                "checks": {k: {"residual": self.residuals[k],
                               "threshold": self.thresholds[k],
                               "ok": ok} for k, ok in self.checks.items()}}


def validate_decomposition(d, tol=DEFAULT_TOL, n_beta=20, seed=0):
    """Recompute rotation, commutation, template and consistency residuals."""
    T = d.T
    res, thr = {}, {}

    res["orthogonality"] = max_abs(T.T @ T - np.eye(3))
    thr["orthogonality"] = tol
    res["determinant"] = abs(float(np.linalg.det(T)) - 1.0)
    thr["determinant"] = tol

    rng = np.random.default_rng(seed)
    betas = rng.uniform(-1.0, 1.0, size=(n_beta, 3))
    res["commutation"] = max(conjugation_residual(T, b) for b in betas)
    thr["commutation"] = tol

    limit = _template_threshold(d, tol)
    for k, v in _template_residuals(d).items():
        res[f"template_{k}"] = v
        thr[f"template_{k}"] = limit

    A0t, At, Bt, Ct = apply_transformation(d.source, T)
    for name, got, want in (("A0t", d.A0t, A0t), ("At", d.At, At),
                            ("Bt", d.Bt, Bt), ("Ct", d.Ct, Ct)):
        res[f"consistency_{name}"] = max_abs(got - want)
        thr[f"consistency_{name}"] = limit
    return ValidationReport(res, thr)
