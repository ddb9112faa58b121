"""
Integrating the Bloch equation
==============================

A fixed-step RK4 integrator is enough for a three-dimensional affine ODE.
The last step is shortened to land exactly on ``t_final``.
"""

import math

import numpy as np

from qubit_structure.blochsim import simulate
from qubit_structure.feedback import FeedbackParams, close_loop, theta_target_params
from qubit_structure.model import build_model

gamma, theta = 4.0, math.pi / 4
lam, a2 = theta_target_params(theta, gamma)
m = build_model(close_loop(FeedbackParams(a2, gamma, lam)))
target = np.array([math.sin(theta), 0, math.cos(theta)])

rng = np.random.default_rng(7)
for _ in range(3):
    a0 = rng.normal(size=3)
    a0 *= 0.8 / np.linalg.norm(a0)
    tr = simulate(m, a0, dt=1e-2, t_final=50 / gamma)
    print("start", np.round(a0, 3), "-> error", float(np.max(np.abs(tr.final - target))))

###############################################################################
# The slowest closed-loop rate is ``min(gamma cos(theta)^2, gamma / 2)``, so
# targets near the equator converge slowly.

for th in (0.3, math.pi / 4, 1.2):
    lam, a2 = theta_target_params(th, gamma)
    ev = np.linalg.eigvals(build_model(close_loop(FeedbackParams(a2, gamma, lam))).A)
    bound = min(gamma * math.cos(th) ** 2, gamma / 2)
    print(f"theta={th:.3f} slowest rate {-max(ev.real):.4f}  predicted {bound:.4f}")
