"""
Homodyne feedback onto a pure state
===================================

Feeding the measured quadrature back with gain ``lambda`` changes the drive
and coupling. Choosing ``lambda`` and ``alpha2`` from a target angle makes
``(sin t, 0, cos t)`` the unique stationary point.
"""

import math

import numpy as np

from qubit_structure.analysis import purity, steady_states
from qubit_structure.feedback import (FeedbackParams, close_loop, scenario,
                                      stationary_closed_form, theta_target_params)
from qubit_structure.model import build_model

np.set_printoptions(precision=6, suppress=True)

for sid in (1, 2, 3, 4):
    b = scenario(sid)
    print(f"scenario {sid}: {b.case.family.value:12s} steady {b.steady.kind:13s}",
          b.steady.point)

###############################################################################
# The closed-form stationary point agrees with the linear solve.

fp = FeedbackParams(alpha2=0.8, gamma=2.0, lam=0.3, phi=0.7)
print(stationary_closed_form(fp), steady_states(build_model(close_loop(fp))).point)

###############################################################################
# Pure-state targets on the a1-a3 great circle.

gamma = 4.0
for theta in (0.3, math.pi / 4, 1.2):
    lam, a2 = theta_target_params(theta, gamma)
    a = steady_states(build_model(close_loop(FeedbackParams(a2, gamma, lam)))).point
    print(f"theta={theta:.3f} lambda={lam:.4f} alpha2={a2:.4f}", a, purity(a)[0].value)
