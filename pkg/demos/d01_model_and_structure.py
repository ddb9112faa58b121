"""
Building a Bloch model and reading off its structure
=====================================================

A qubit is described by a drive vector ``alpha`` and a complex coupling
``Gamma = gamma_re + i gamma_im``. From these we get the affine Bloch
equation ``da/dt = A a + A0`` plus the noise and output maps ``B`` and ``C``.
"""

import numpy as np

from qubit_structure import ModelParams, build_model, classify, structure_report

np.set_printoptions(precision=4, suppress=True)

# a driven atom with real coupling along sigma1 and drive along sigma2
p = ModelParams(alpha=[0, 1, 0], gamma_re=[1, 0, 0], gamma_im=[0, 0, 0])
m = build_model(p)
print("c1 =", p.c1, " c2 =", p.c2)
print("A =\n", m.A)
print("A0 =", m.A0)

###############################################################################
# Controllability and observability follow from the Kalman-style matrices.
# Rank is relative to the largest singular value.

r = structure_report(m)
print("rank ctrb =", r.rank_ctrb, " rank obsv =", r.rank_obsv)
print("controllable:", r.controllable, " observable:", r.observable)

###############################################################################
# The classifier walks the decision tree on (alpha, c1, c2).

case = classify(p, m)
print(case.family.value, "--", case.citation)

# c2 parallel to c1 with alpha along c1 lands in the pattern with a QND axis
q = ModelParams.from_c(alpha=[0.5, 0, 0], c1=[1, 0, 0], c2=[-2, 0, 0])
print(classify(q).family.value, "--", classify(q).citation)
