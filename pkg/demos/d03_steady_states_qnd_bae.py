"""
Steady states, QND variables and back-action evasion
====================================================

Once the model is in block form, stationary solutions, conserved
coordinates and decoupled noise-to-output channels can be read off.
"""

import numpy as np

from qubit_structure import ModelParams, build_model, classify, construct_transformation
from qubit_structure.analysis import is_hurwitz, purity, qnd_bae_report, steady_states

np.set_printoptions(precision=4, suppress=True)


def show(name, p):
    m = build_model(p)
    d = construct_transformation(p, m, classify(p, m))
    ss = steady_states(m)
    rep = qnd_bae_report(d)
    print(f"--- {name}: {d.case.family.value}")
    print("Hurwitz:", is_hurwitz(m.A))
    if ss.unique:
        print("steady state", ss.point, purity(ss.point)[0].value)
    else:
        print("steady family", ss.point, "+ s *", ss.directions[0],
              "with |s| <=", ss.physical_radius)
    print("QND:", rep.qnd_vars, " BAE:", [str(c) for c in rep.bae_pairs])
    if rep.df_family:
        print("DF:", rep.df_family.description)


# generic: unique mixed steady state
show("generic", ModelParams([0, 1, 0], [1, 0, 0], [0, -1, 0]))

# drive parallel to the coupling: sigma3~ is conserved
show("parallel drive", ModelParams.from_c([0.4, 0, 0], [2, 0, 0], [0, 0, 0]))

# drive orthogonal to the coupling: the origin is the only steady state
show("orthogonal drive", ModelParams.from_c([0, 1, 0], [2, 0, 0], [0, 0, 0]))
