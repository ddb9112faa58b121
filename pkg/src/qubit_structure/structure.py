"""Controllability/observability structure and case classification."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .skewform import DEFAULT_TOL, cross_norm


class Family(str, Enum):
    SPECIAL_I = "SpecialI"
    SPECIAL_II = "SpecialII"
    SPECIAL_III = "SpecialIII"
    GENERAL_I = "GeneralI"
    GENERAL_II = "GeneralII"
    GENERAL_IIIA = "GeneralIIIa"
    GENERAL_IIIB = "GeneralIIIb"
    GENERAL_IIIC = "GeneralIIIc"
    MIRRORED_SPECIAL = "MirroredSpecial"
    CLOSED_SYSTEM = "ClosedSystem"


_CITATIONS = {
    Family.SPECIAL_I: "Theorem 1, Case (i)",
    Family.SPECIAL_II: "Theorem 1, Case (ii)",
    Family.SPECIAL_III: "Theorem 1, Case (iii)",
    Family.GENERAL_I: "Theorem 4, Case (i)",
    Family.GENERAL_II: "Theorem 4, Case (ii)",
    Family.GENERAL_IIIA: "Theorem 4, Case (iii)(a)",
    Family.GENERAL_IIIB: "Theorem 4, Case (iii)(b)",
    Family.GENERAL_IIIC: "Theorem 4, Case (iii)(c)",
    Family.CLOSED_SYSTEM: "closed system (Gamma = 0), outside Theorems 1 and 4",
}


@dataclass(frozen=True)
class CaseLabel:
    """Outcome of :func:`classify`.

    ``mu`` and ``nu`` are the proportionality witnesses: ``alpha = mu c1``
    for SpecialIII, ``c2 = mu c1`` and ``alpha = nu c1`` for the GeneralIII
    families, ``alpha = mu c2`` for MirroredSpecial subcase "iii".
    ``subcase`` is only set for MirroredSpecial and mirrors Theorem 1's
    (i)/(ii)/(iii) with c2 in place of c1.
    """

    family: Family
    mu: float | None = None
    nu: float | None = None
    subcase: str | None = None
    tol: float = DEFAULT_TOL

    @property
    def citation(self):
        if self.family is Family.MIRRORED_SPECIAL:
            return (f"mirror of Theorem 1, Case ({self.subcase}) with c2 in place "
                    "of c1 (c1 = 0; extension)")
        return _CITATIONS[self.family]

    @property
    def pattern(self):
        """Theorem 1 pattern ("i", "ii", "iii") the case reduces to, if any."""
        f = self.family
        if f in (Family.SPECIAL_I, Family.GENERAL_IIIA):
            return "i"
        if f in (Family.SPECIAL_II, Family.GENERAL_IIIB):
            return "ii"
        if f in (Family.SPECIAL_III, Family.GENERAL_IIIC):
            return "iii"
        if f is Family.MIRRORED_SPECIAL:
            return self.subcase
        return None

    def to_dict(self):
        return {"family": self.family.value, "citation": self.citation,
                "mu": self.mu, "nu": self.nu, "subcase": self.subcase,
                "tol": self.tol}


def ctrb_matrix(m):
    """Controllability matrix ``[B, AB, A^2 B]`` (3 x 18)."""
    A, B = m.A, m.B
    return np.hstack([B, A @ B, A @ A @ B])


def obsv_matrix(m):
    """Observability matrix ``[C; CA; CA^2]`` (6 x 3)."""
    A, C = m.A, m.C
    return np.vstack([C, C @ A, C @ A @ A])


def numerical_rank(M, rel_tol=DEFAULT_TOL):
    """Count singular values above ``rel_tol`` times the largest one."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def _range_and_complement(M, rel_tol):
    """Orthonormal bases of Range(M) and its orthogonal complement in R^3."""
    U, s, _ = np.linalg.svd(np.asarray(M, dtype=float), full_matrices=True)
    r = numerical_rank(M, rel_tol)
    return U[:, :r], U[:, r:]


def _intersection_dim(U, V, tol):
    if U.shape[1] == 0 or V.shape[1] == 0:
        return 0
    # principal angles: cos = 1 marks a shared direction
    cosines = np.linalg.svd(U.T @ V, compute_uv=False)
    return int(np.sum(cosines > 1.0 - np.sqrt(tol)))


@dataclass
class StructureReport:
    ctrb: np.ndarray
    obsv: np.ndarray
    rank_ctrb: int
    rank_obsv: int
    dim_co: int
    dim_c_obar: int
    dim_cbar_o: int
    dim_cbar_obar: int
    tol: float = DEFAULT_TOL
    bases: dict = field(default_factory=dict, repr=False)

    @property
    def controllable(self):
        return self.rank_ctrb == 3

    @property
    def observable(self):
        return self.rank_obsv == 3

    @property
    def transverse(self):
        return (self.dim_co + self.dim_c_obar + self.dim_cbar_o
                + self.dim_cbar_obar) == 3

    def to_dict(self):
        return {"rank_ctrb": self.rank_ctrb, "rank_obsv": self.rank_obsv,
                "controllable": self.controllable, "observable": self.observable,
                "dim_R_co": self.dim_co, "dim_R_c_obar": self.dim_c_obar,
                "dim_R_cbar_o": self.dim_cbar_o,
                "dim_R_cbar_obar": self.dim_cbar_obar, "tol": self.tol}


def structure_report(m, tol=DEFAULT_TOL):
    Cc = ctrb_matrix(m)
    Ob = obsv_matrix(m)
    rc = numerical_rank(Cc, tol)
    ro = numerical_rank(Ob, tol)
    range_c, ker_ct = _range_and_complement(Cc, tol)
    range_ot, ker_o = _range_and_complement(Ob.T, tol)
    return StructureReport(
        ctrb=Cc, obsv=Ob, rank_ctrb=rc, rank_obsv=ro,
        dim_co=_intersection_dim(range_c, range_ot, tol),
        dim_c_obar=_intersection_dim(range_c, ker_o, tol),
        dim_cbar_o=_intersection_dim(ker_ct, range_ot, tol),
        dim_cbar_obar=_intersection_dim(ker_ct, ker_o, tol),
        tol=tol,
        bases={"range_ctrb": range_c, "ker_ctrb_T": ker_ct,
               "range_obsv_T": range_ot, "ker_obsv": ker_o},
    )


def _parallel(u, v, tol):
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    return cross_norm(u, v) <= tol * nu * nv


def _orthogonal(u, v, tol):
    return abs(float(u @ v)) <= tol * np.linalg.norm(u) * np.linalg.norm(v)


def _ratio(u, v):
    """Least-squares ``mu`` with ``u ~ mu v``."""
    return float(u @ v / (v @ v))


def _single_coupling(alpha, c, tol, alpha_zero):
    """Theorem 1 decision for one nonzero coupling vector ``c``."""
    if alpha_zero or _parallel(alpha, c, tol):
        return "iii", (0.0 if alpha_zero else _ratio(alpha, c))
    if _orthogonal(alpha, c, tol):
        return "ii", None
    return "i", None


def classify(params, m=None, tol=DEFAULT_TOL):
    """
    Place a model in exactly one case of Theorem 1 / Theorem 4.

    A vector counts as zero when its norm is at most ``tol`` times the
    largest of ``|alpha|, |c1|, |c2|``. Parallelism is
    ``|u x v| <= tol |u||v|`` and orthogonality ``|u.v| <= tol |u||v|``.
    ``m`` is accepted for interface symmetry; the decision only needs the
    parameter vectors.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    alpha, c1, c2 = params.alpha, params.c1, params.c2
    scale = max(np.linalg.norm(alpha), np.linalg.norm(c1), np.linalg.norm(c2))
    n1, n2, na = np.linalg.norm(c1), np.linalg.norm(c2), np.linalg.norm(alpha)
    c1_zero = n1 <= tol * scale
    c2_zero = n2 <= tol * scale
    alpha_zero = na <= tol * scale

    if c1_zero and c2_zero:
        return CaseLabel(Family.CLOSED_SYSTEM, tol=tol)
    if c2_zero:
        sub, mu = _single_coupling(alpha, c1, tol, alpha_zero)
        fam = {"i": Family.SPECIAL_I, "ii": Family.SPECIAL_II,
               "iii": Family.SPECIAL_III}[sub]
        return CaseLabel(fam, mu=mu, tol=tol)
    if c1_zero:
        sub, mu = _single_coupling(alpha, c2, tol, alpha_zero)
        return CaseLabel(Family.MIRRORED_SPECIAL, mu=mu, subcase=sub, tol=tol)

    if not _parallel(c1, c2, tol):
        if alpha_zero or (_orthogonal(alpha, c1, tol) and _orthogonal(alpha, c2, tol)):
            return CaseLabel(Family.GENERAL_II, tol=tol)
        return CaseLabel(Family.GENERAL_I, tol=tol)

    mu = _ratio(c2, c1)
    sub, nu = _single_coupling(alpha, c1, tol, alpha_zero)
    fam = {"i": Family.GENERAL_IIIA, "ii": Family.GENERAL_IIIB,
           "iii": Family.GENERAL_IIIC}[sub]
    return CaseLabel(fam, mu=mu, nu=nu, tol=tol)
