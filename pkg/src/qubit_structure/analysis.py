"""Steady states, Hurwitz stability, purity, DF subspaces, QND variables and BAE channels."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .skewform import DEFAULT_TOL, as_vec3, max_abs
from .structure import Family, numerical_rank

HURWITZ_MARGIN = 1e-10


class SteadyStateError(ArithmeticError):
    """The Bloch equation ``A a + A0 = 0`` has no numerically consistent solution."""


class UnphysicalState(ValueError):
    """A Bloch vector lies outside the closed unit ball."""


@dataclass
class SteadyStateResult:
    """
    Stationary solutions ``point + directions @ s`` of the Bloch equation.

    ``point`` is the minimum-norm solution and ``directions`` is an
    orthonormal null-space basis of ``A``, so the physical members are those
    with ``|s| <= physical_radius``.
    """

    kind: str
    point: np.ndarray
    directions: list
    residual: float
    physical_radius: float | None

    @property
    def unique(self):
        return self.kind == "unique"

    @property
    def physical_segment(self):
        """Parameter interval of a one-parameter family inside the ball."""
        if self.unique or self.physical_radius is None:
            return None
        return (-self.physical_radius, self.physical_radius)

    def pure_members(self):
        """States of a one-parameter family lying on the Bloch sphere."""
        if len(self.directions) != 1 or self.physical_radius is None:
            return []
        d = self.directions[0]
        r = self.physical_radius
        return [self.point - r * d, self.point + r * d]

    def to_dict(self):
        return {"kind": self.kind, "point": self.point.tolist(),
                "directions": [d.tolist() for d in self.directions],
                "residual": self.residual,
                "physical_segment": (list(self.physical_segment)
                                     if self.physical_segment else None)}


def steady_states(m, tol=DEFAULT_TOL):
    A, A0 = m.A, m.A0
    limit = tol * (1.0 + max_abs(A) + max_abs(A0))
    if numerical_rank(A, tol) == 3:
        point = np.linalg.solve(A, -A0)
        resid = float(np.linalg.norm(A @ point + A0))
        if resid > limit:
            raise SteadyStateError(f"linear solve residual {resid:.3e} exceeds {limit:.3e}")
        return SteadyStateResult("unique", point, [], resid, None)

    _, s, Vt = np.linalg.svd(A)
    rank = numerical_rank(A, tol)
    point = np.linalg.lstsq(A, -A0, rcond=tol)[0]
    resid = float(np.linalg.norm(A @ point + A0))
    if resid > limit:
        raise SteadyStateError(
            f"Bloch equation inconsistent: residual {resid:.3e} exceeds {limit:.3e}; "
            "a stationary solution always exists for valid models")
    directions = [_unit_sign(Vt[k]) for k in range(rank, 3)]
    # lstsq gives the min-norm point, orthogonal to the null space
    for d in directions:
        point = point - (point @ d) * d
    n2 = float(point @ point)
    radius = float(np.sqrt(1.0 - n2)) if n2 <= 1.0 else None
    return SteadyStateResult("affine_family", point, directions, resid, radius)


def _unit_sign(v):
    k = int(np.argmax(np.abs(v)))
    return v / np.linalg.norm(v) * (1.0 if v[k] >= 0 else -1.0)


def char_poly(A):
    """Coefficients ``(p2, p1, p0)`` of ``det(sI - A) = s^3 + p2 s^2 + p1 s + p0``."""
    A = np.asarray(A, dtype=float)
    minors = (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
              + A[0, 0] * A[2, 2] - A[0, 2] * A[2, 0]
              + A[1, 1] * A[2, 2] - A[1, 2] * A[2, 1])
    return -float(np.trace(A)), float(minors), -float(np.linalg.det(A))


def is_hurwitz(A, tol=HURWITZ_MARGIN):
    """Routh-Hurwitz test for a 3x3 matrix, each inequality with margin ``tol``."""
    p2, p1, p0 = char_poly(A)
    return bool(p2 > tol and p0 > tol and p2 * p1 - p0 > tol)


def qnd_variables(d, tol=DEFAULT_TOL):
    """1-based indices ``k`` whose transformed coordinate has no dynamics or noise."""
    out = []
    for k in range(3):
        row = np.concatenate([d.At[k], d.Bt[k], [d.A0t[k]]])
        if max_abs(row) <= tol:
            out.append(k + 1)
    return out


@dataclass(frozen=True)
class BaeChannel:
    """Input ``W_i`` does not reach output ``Y_j`` (1-based)."""

    input: int
    output: int
    trivial: bool = False

    @property
    def pair(self):
        return (self.input, self.output)

    def __str__(self):
        note = " (trivial)" if self.trivial else ""
        return f"W{self.input} -> Y{self.output}{note}"


def bae_channels(d, tol=DEFAULT_TOL):
    """
    Back-action-evading channels from noise input ``W_i`` to output ``Y_j``.

    Only ``i != j`` is considered since ``dY_j`` contains ``dW_j`` directly.
    A pair is reported when the Markov parameters ``c_j A^k B_i``
    (k = 0, 1, 2) vanish. Pairs where ``c_j`` or ``B_i`` vanishes
    identically are flagged trivial and reported only for unobservable
    models; an observable model realizes no BAE measurement.
    """
    At, Ct = d.At, d.Ct
    observable = numerical_rank(np.vstack([Ct, Ct @ At, Ct @ At @ At]), tol) == 3
    a_scale = 1.0 + max_abs(At)
    out = []
    for i in (1, 2):
        Bi = d.Bt[:, 3 * (i - 1):3 * i]
        for j in (1, 2):
            if i == j:
                continue
            cj = Ct[j - 1]
            if max_abs(cj) <= tol or max_abs(Bi) <= tol:
                if not observable:
                    out.append(BaeChannel(i, j, trivial=True))
                continue
            scale = max_abs(cj) * max_abs(Bi)
            v = cj.copy()
            quiet = True
            for k in range(3):
                if max_abs(v @ Bi) > tol * scale * a_scale ** k:
                    quiet = False
                    break
                v = v @ At
            if quiet:
                out.append(BaeChannel(i, j))
    return out


@dataclass(frozen=True)
class DFSubspace:
    description: str
    coordinate: int | None = 3
    full_space: bool = False
    dark_states: bool = True


def df_subspace(case):
    f = case.family
    if f is Family.CLOSED_SYSTEM:
        return DFSubspace("all states: the dissipator vanishes identically "
                          "(closed system), evolution is unitary",
                          coordinate=None, full_space=True, dark_states=False)
    if case.pattern == "iii":
        return DFSubspace("rho~ = (I + a3 sigma3~)/2, a3 in [-1, 1]; dark states "
                          "([H, rho~] = 0 and L_L(rho~) = 0)")
    return None


class Purity(str, Enum):
    PURE = "pure"
    MIXED = "mixed"
    COMPLETELY_MIXED = "completely_mixed"


def purity(a, tol=1e-8):
    """Classify a Bloch vector; returns ``(Purity, a.a)``."""
    a = as_vec3(a, "a")
    r2 = float(a @ a)
    if r2 > 1.0 + tol:
        raise UnphysicalState(f"|a|^2 = {r2:.12g} exceeds 1")
    if abs(r2 - 1.0) <= tol:
        return Purity.PURE, r2
    if r2 <= tol:
        return Purity.COMPLETELY_MIXED, r2
    return Purity.MIXED, r2


@dataclass
class QndBaeReport:
    qnd_vars: list
    bae_pairs: list
    df_family: DFSubspace | None = None
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {"qnd_vars": self.qnd_vars,
                "bae_pairs": [{"input": c.input, "output": c.output,
                               "trivial": c.trivial} for c in self.bae_pairs],
                "df_subspace": (None if self.df_family is None else
                                {"description": self.df_family.description,
                                 "full_space": self.df_family.full_space})}


def qnd_bae_report(d, tol=DEFAULT_TOL):
    return QndBaeReport(qnd_variables(d, tol), bae_channels(d, tol), df_subspace(d.case))
