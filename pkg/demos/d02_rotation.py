"""
Rotating into block form
========================

Every admissible change of coordinates is a rotation: only ``T`` in SO(3)
keeps the skew map covariant, ``theta(T^T b) = T^T theta(b) T``.
"""

import numpy as np

from qubit_structure import (ModelParams, build_model, classify,
                             construct_transformation, validate_decomposition)
from qubit_structure.skewform import conjugation_residual, is_rotation

np.set_printoptions(precision=4, suppress=True)

# a reflection breaks covariance, a rotation keeps it
R = np.diag([1.0, 1.0, -1.0])
beta = np.array([0.3, -1.2, 0.7])
print("reflection residual:", conjugation_residual(R, beta))

###############################################################################
# The feedback-stabilised atom with drive and gain ``lambda = -1``.

p = ModelParams(alpha=[0, 1, 0], gamma_re=[1, 0, 0], gamma_im=[0, 0, 0])
m = build_model(p)
d = construct_transformation(p, m, classify(p, m))
print("recipe:", d.recipe, " rotation:", is_rotation(d.T))
print("T =\n", d.T)
print("A~ =\n", d.At)
print("B~ =\n", d.Bt)
print("C~ =\n", d.Ct)

###############################################################################
# The validation report recomputes every residual from scratch.

v = validate_decomposition(d)
for name, ok in v.checks.items():
    print(f"{name:24s} {v.residuals[name]:.2e} {'ok' if ok else 'FAIL'}")
