"""Random models drawn exactly inside each case family."""

import numpy as np

from qubit_structure.model import ModelParams


def _vec(rng):
    return rng.uniform(-2.0, 2.0, size=3)


def _perp(rng, *vs):
    """Random nonzero vector orthogonal to every vector in ``vs``."""
    x = _vec(rng)
    Q, _ = np.linalg.qr(np.column_stack(vs))
    x = x - Q @ (Q.T @ x)
    return x


def random_model(family, rng, subcase=None):
    z = np.zeros(3)
    if family == "GeneralI":
        return ModelParams.from_c(_vec(rng), _vec(rng), _vec(rng))
    if family == "SpecialI":
        return ModelParams.from_c(_vec(rng), _vec(rng), z)
    if family == "SpecialII":
        c1 = _vec(rng)
        return ModelParams.from_c(_perp(rng, c1), c1, z)
    if family == "SpecialIII":
        c1 = _vec(rng)
        mu = 0.0 if rng.uniform() < 0.2 else rng.uniform(-2, 2)
        return ModelParams.from_c(mu * c1, c1, z)
    if family == "GeneralII":
        c1, c2 = _vec(rng), _vec(rng)
        nu = 0.0 if rng.uniform() < 0.3 else rng.uniform(-2, 2)
        return ModelParams.from_c(nu * np.cross(c1, c2), c1, c2)
    if family == "GeneralIIIa":
        c1 = _vec(rng)
        return ModelParams.from_c(_vec(rng), c1, rng.uniform(-2, 2) * c1)
    if family == "GeneralIIIb":
        c1 = _vec(rng)
        return ModelParams.from_c(_perp(rng, c1), c1, rng.uniform(-2, 2) * c1)
    if family == "GeneralIIIc":
        c1 = _vec(rng)
        nu = 0.0 if rng.uniform() < 0.2 else rng.uniform(-2, 2)
        return ModelParams.from_c(nu * c1, c1, rng.uniform(-2, 2) * c1)
    if family == "MirroredSpecial":
        inner = random_model(f"Special{subcase}", rng)
        return ModelParams(inner.alpha, inner.gamma_im, inner.gamma_re)
    if family == "ClosedSystem":
        return ModelParams(_vec(rng), z, z)
    raise ValueError(family)


ALL_FAMILIES = [
    ("GeneralI", None), ("SpecialI", None), ("SpecialII", None),
    ("SpecialIII", None), ("GeneralII", None), ("GeneralIIIa", None),
    ("GeneralIIIb", None), ("GeneralIIIc", None), ("MirroredSpecial", "I"),
    ("MirroredSpecial", "II"), ("MirroredSpecial", "III"), ("ClosedSystem", None),
]
