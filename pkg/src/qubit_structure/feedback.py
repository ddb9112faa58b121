"""
Homodyne feedback on a driven, damped two-level atom.

Before feedback ``H = alpha2 sigma2`` and ``L = (sqrt(gamma)/2)(sigma1 - i sigma2)``.
Measuring the quadrature ``cos(phi) Y1 + sin(phi) Y2`` and feeding it back
with gain ``lambda`` gives

    H_cl = H + (sqrt(gamma) lambda sin(phi) / 2) (sigma3 - I)
    L_cl = L - i lambda sigma2

and the constant energy shift is dropped.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .analysis import (is_hurwitz, purity, qnd_bae_report, steady_states)
from .model import ModelParams, build_model
from .skewform import DEFAULT_TOL
from .structure import Family, classify, structure_report
from .transform import construct_transformation, validate_decomposition


class FeedbackParamError(ValueError):
    pass


@dataclass(frozen=True)
class FeedbackParams:
    alpha2: float = 1.0
    gamma: float = 4.0
    lam: float = 0.0
    phi: float = 0.0
    theta: float | None = None

    def __post_init__(self):
        if not self.gamma > 0:
            raise FeedbackParamError(f"gamma must be positive, got {self.gamma}")


def close_loop(p):
    """Closed-loop ``ModelParams`` for feedback parameters ``p``."""
    if not p.gamma > 0:
        raise FeedbackParamError(f"gamma must be positive, got {p.gamma}")
    sg = math.sqrt(p.gamma)
    s, c = math.sin(p.phi), math.cos(p.phi)
    alpha = [0.0, p.alpha2, 0.5 * sg * p.lam * s]
    c1 = [sg, 2.0 * p.lam * s, 0.0]
    c2 = [0.0, -(sg + 2.0 * p.lam * c), 0.0]
    return ModelParams.from_c(alpha, c1, c2)


def upsilon(p):
    sg = math.sqrt(p.gamma)
    k = sg * p.lam * math.cos(p.phi)
    return (p.alpha2 ** 2
            + (p.gamma / 4 + k + p.lam ** 2) * (p.gamma / 2 + k + p.lam ** 2))


def stationary_closed_form(p, tol=1e-12):
    """Stationary closed-loop Bloch vector from the explicit formulas."""
    ups = upsilon(p)
    if abs(ups) <= tol:
        raise ZeroDivisionError(
            "Upsilon vanishes: the stationary set is not a single point; "
            "use steady_states on the closed-loop model")
    sg = math.sqrt(p.gamma)
    k = sg * p.lam * math.cos(p.phi)
    half = p.gamma / 2 + k
    a1 = -p.alpha2 * half / ups
    a2 = -4.0 * p.alpha2 * p.lam * math.sin(p.phi) * half / (ups * sg)
    a3 = -half * (p.gamma / 4 + k + p.lam ** 2) / ups
    return np.array([a1, a2, a3])


def theta_target_params(theta, gamma):
    """Gain and drive ``(lambda, alpha2)`` that stabilise ``(sin t, 0, cos t)`` with ``phi = 0``."""
    if not gamma > 0:
        raise FeedbackParamError(f"gamma must be positive, got {gamma}")
    lam = -0.5 * math.sqrt(gamma) * (1.0 + math.cos(theta))
    alpha2 = 0.25 * gamma * math.sin(theta) * math.cos(theta)
    return lam, alpha2


def scenario_defaults(sid, gamma=4.0):
    """Preset feedback parameters of the four worked scenarios."""
    sg = math.sqrt(gamma)
    if sid == 1:
        return FeedbackParams(alpha2=1.0, gamma=gamma, lam=0.0, phi=0.0)
    if sid == 2:
        return FeedbackParams(alpha2=0.0, gamma=gamma, lam=-sg / 2, phi=0.0)
    if sid == 3:
        return FeedbackParams(alpha2=1.0, gamma=gamma, lam=-sg / 2, phi=0.0)
    if sid == 4:
        return FeedbackParams(alpha2=0.0, gamma=gamma, lam=1.0, phi=math.pi / 3)
    raise FeedbackParamError(f"scenario id must be 1..4, got {sid}")


def expected_family(sid, p):
    """Case stated for each scenario in the worked example, when it is stated."""
    if sid == 1 and p.lam == 0:
        return Family.GENERAL_I if p.alpha2 != 0 else Family.GENERAL_II
    if sid == 2 and p.theta is None and p.alpha2 == 0 and p.phi == 0:
        return Family.SPECIAL_III
    if sid == 3 and p.alpha2 != 0 and p.phi == 0:
        return Family.SPECIAL_II
    if sid == 4:
        return Family.GENERAL_II
    return None


@dataclass
class ScenarioBundle:
    sid: int
    feedback: FeedbackParams
    params: ModelParams
    matrices: object
    structure: object
    case: object
    decomposition: object
    validation: object
    steady: object
    hurwitz: bool
    qnd_bae: object
    expected: Family | None
    closed_form: np.ndarray | None = None
    target: np.ndarray | None = None
    purity: tuple | None = None
    extras: dict = field(default_factory=dict)


def scenario(sid, gamma=None, alpha2=None, lam=None, phi=None, theta=None,
             tol=DEFAULT_TOL):
    """
    Run the full pipeline for one of the four worked scenarios.

    Unset overrides fall back to the preset; for scenario 2 a ``theta``
    replaces ``lam`` and ``alpha2`` with the stabilising pair.
    """
    p = scenario_defaults(sid, 4.0 if gamma is None else gamma)
    overrides = {k: v for k, v in (("alpha2", alpha2), ("lam", lam), ("phi", phi))
                 if v is not None}
    p = replace(p, **overrides)
    target = None
    if theta is not None:
        if sid != 2:
            raise FeedbackParamError("--theta only applies to scenario 2")
        lam_t, a2_t = theta_target_params(theta, p.gamma)
        p = replace(p, lam=lam_t, alpha2=a2_t, phi=0.0, theta=theta)
        target = np.array([math.sin(theta), 0.0, math.cos(theta)])

    params = close_loop(p)
    m = build_model(params)
    struct = structure_report(m, tol)
    case = classify(params, m, tol)
    d = construct_transformation(params, m, case, tol)
    ss = steady_states(m, tol)
    bundle = ScenarioBundle(
        sid=sid, feedback=p, params=params, matrices=m, structure=struct,
        case=case, decomposition=d, validation=validate_decomposition(d, tol),
        steady=ss, hurwitz=is_hurwitz(m.A), qnd_bae=qnd_bae_report(d, tol),
        expected=expected_family(sid, p), target=target)
    try:
        bundle.closed_form = stationary_closed_form(p)
    except ZeroDivisionError:
        bundle.closed_form = None
    if ss.unique:
        bundle.purity = purity(ss.point)
    return bundle
