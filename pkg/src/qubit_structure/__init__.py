"""Structural decomposition of open two-level quantum systems.

The Bloch-equation model ``da/dt = A a + A0`` of a qubit with Hamiltonian
``H = alpha . X`` and coupling ``L = Gamma . X`` is classified by its
controllability/observability structure and rotated into block form, which
exposes steady states, decoherence-free subspaces, QND variables and
back-action-evading measurement channels.
"""

from .analysis import (BaeChannel, Purity, SteadyStateError, SteadyStateResult,
                       UnphysicalState, bae_channels, df_subspace, is_hurwitz,
                       purity, qnd_bae_report, qnd_variables, steady_states)
from .blochsim import SimulationDiverged, Trajectory, simulate
from .feedback import (FeedbackParams, close_loop, scenario,
                       stationary_closed_form, theta_target_params)
from .model import ModelParams, SystemMatrices, bloch_rhs, build_model
from .skewform import (InvalidTransformation, enforce_rotation, is_rotation,
                       theta, triple_product)
from .structure import (CaseLabel, Family, classify, ctrb_matrix,
                        numerical_rank, obsv_matrix, structure_report)
from .transform import (Decomposition, DecompositionError,
                        construct_transformation, validate_decomposition)

__version__ = "0.1.0"
