"""Fixed-step RK4 integration of the Bloch equation."""

import math
from dataclasses import dataclass

import numpy as np

from .analysis import UnphysicalState
from .skewform import as_vec3

DEFAULT_DT = 1e-3


class SimulationDiverged(ArithmeticError):
    def __init__(self, t_last):
        super().__init__(f"integration produced non-finite values after t = {t_last:.12g}")
        self.t_last = t_last


@dataclass
class Trajectory:
    times: np.ndarray    # (n,)
    states: np.ndarray   # (n, 3)

    @property
    def final(self):
        return self.states[-1]

    def __len__(self):
        return len(self.times)


def _time_grid(dt, t_final):
    n = int(math.ceil(t_final / dt - 1e-9))
    times = np.arange(n + 1, dtype=float) * dt
    times[-1] = t_final
    return times


def simulate(m, a0, dt=DEFAULT_DT, t_final=1.0, tol=1e-9):
    """
    Integrate ``da/dt = A a + A0`` with the classic fourth-order
    Runge-Kutta scheme.

    The last step is shortened so the grid ends exactly at ``t_final``;
    both endpoints are included.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    a = as_vec3(a0, "a0")
    if a @ a > 1.0 + tol:
        raise UnphysicalState(f"initial state has |a|^2 = {a @ a:.12g} > 1")

    A, A0 = m.A, m.A0
    times = _time_grid(dt, t_final) if t_final > 0 else np.zeros(1)
    states = np.empty((len(times), 3))
    states[0] = a
    # overflow surfaces as SimulationDiverged instead of a warning
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(len(times) - 1):
            h = times[k + 1] - times[k]
            k1 = A @ a + A0
            k2 = A @ (a + 0.5 * h * k1) + A0
            k3 = A @ (a + 0.5 * h * k2) + A0
            k4 = A @ (a + h * k3) + A0
            a = a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(a)):
                raise SimulationDiverged(times[k])
            states[k + 1] = a
    return Trajectory(times, states)
