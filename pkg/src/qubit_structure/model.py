"""Input-output model matrices of a two-level system and its Bloch equation."""

from dataclasses import dataclass

import numpy as np

from .skewform import as_vec3, theta


@dataclass(frozen=True)
class ModelParams:
    """
    Hamiltonian ``H = alpha . X`` and coupling ``L = Gamma . X``.

    ``Gamma = gamma_re + 1j * gamma_im`` is kept as two real 3-vectors.
    """

    alpha: np.ndarray
    gamma_re: np.ndarray
    gamma_im: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_vec3(self.alpha, "alpha"))
        object.__setattr__(self, "gamma_re", as_vec3(self.gamma_re, "gamma_re"))
        object.__setattr__(self, "gamma_im", as_vec3(self.gamma_im, "gamma_im"))

    @classmethod
    def from_c(cls, alpha, c1, c2):
        """Build from the real coupling vectors ``c1 = 2Re(Gamma)``, ``c2 = 2Im(Gamma)``."""
        return cls(alpha, 0.5 * as_vec3(c1, "c1"), 0.5 * as_vec3(c2, "c2"))

    @property
    def c1(self):
        return 2.0 * self.gamma_re

    @property
    def c2(self):
        return 2.0 * self.gamma_im

    def rotated(self, T):
        """Parameters seen in the coordinates ``X~ = T^T X``."""
        T = np.asarray(T, dtype=float)
        return ModelParams(T.T @ self.alpha, T.T @ self.gamma_re, T.T @ self.gamma_im)


@dataclass(frozen=True)
class SystemMatrices:
    A0: np.ndarray   # (3,)
    A: np.ndarray    # (3, 3)
    B: np.ndarray    # (3, 6)
    C: np.ndarray    # (2, 3)

    @property
    def B1(self):
        return self.B[:, :3]

    @property
    def B2(self):
        return self.B[:, 3:]


def build_model(params):
    """
    System matrices of ``dX = A0 dt + A X dt + B [X dW1; X dW2]``,
    ``dY = C X dt + dW``.

    ``A0 = theta(c2) c1``, ``B = [theta(c2), -theta(c1)]``, ``C = [c1; c2]``
    and ``A = -2 theta(alpha) - B B^T / 2``.
    """
    c1, c2 = params.c1, params.c2
    B = np.hstack([theta(c2), -theta(c1)])
    A = -2.0 * theta(params.alpha) - 0.5 * B @ B.T
    A0 = theta(c2) @ c1
    C = np.vstack([c1, c2])
    return SystemMatrices(A0=A0, A=A, B=B, C=C)


def bloch_rhs(m, a):
    """Right-hand side ``A a + A0`` of the Bloch equation."""
    return m.A @ as_vec3(a, "a") + m.A0
