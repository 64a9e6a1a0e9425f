"""Norm, probability current, steady-state detection, T/R extraction."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import ContractViolation
from .state import WaveField

__all__ = [
    "CurrentSeries",
    "ScatteringRecord",
    "total_norm",
    "current_at",
    "extract_rt",
    "steady_state_time",
]


@dataclass(frozen=True)
class CurrentSeries:
    """Probability current sampled at one lattice point over time."""

    probe_index: int
    samples: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        times = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ContractViolation("current samples must advance in time")

    def times(self):
        return np.array([t for t, _ in self.samples])

    def currents(self):
        return np.array([j for _, j in self.samples])


@dataclass(frozen=True)
class ScatteringRecord:
    k: float
    T_num: float
    R_num: float
    T_ana: float
    R_ana: float
    steady_time: float

    def __post_init__(self):
        for v in (self.T_num, self.R_num):
            if not -0.05 <= v <= 1.05:
                raise ContractViolation(f"coefficient {v} far outside [0, 1]")
        if abs(self.T_ana + self.R_ana - 1.0) > 1e-12:
            raise ContractViolation("analytic T + R must equal 1")


def total_norm(field: WaveField) -> float:
    """dx times the summed density over interior points (walls hold zero)."""
    return float(field.grid.dx * np.sum(np.abs(field.values[1:-1]) ** 2))


def current_at(field: WaveField, j: int) -> float:
    """J_j = 2 Im(conj(psi_j) (psi_{j+1} - psi_{j-1}) / (2 dx)).

    The central difference keeps the plane-wave current exactly
    2 sin(k dx)/dx, within O(dx^2) of the continuum 2k|A|^2.
    """
    n = field.grid.n_points
    if not 1 <= j <= n - 2:
        raise ContractViolation(f"current probe {j} must be an interior index")
    psi = field.values
    grad = (psi[j + 1] - psi[j - 1]) / (2.0 * field.grid.dx)
    return float(2.0 * np.imag(np.conj(psi[j]) * grad))


def extract_rt(j_t: float, j_r: float, k: float, amplitude: complex):
    """Transmission and reflection from steady probe currents.

    The incident current of the drive A exp(i(kx - w t)) is 2k|A|^2; the
    transmitted probe carries T times that, the reflected probe -R times
    it (reflected flow points left, so its current is negative).
    """
    if k <= 0:
        raise ContractViolation("wavevector must be positive")
    if amplitude == 0:
        raise ContractViolation("drive amplitude must be nonzero")
    j_inc = 2.0 * k * abs(amplitude) ** 2
    return j_t / j_inc, -j_r / j_inc


def steady_state_time(
    series: CurrentSeries, window: int = 200, tol: float = 1e-3
) -> Optional[float]:
    """Earliest window boundary where consecutive window means agree.

    The samples are cut into consecutive blocks of `window` points; the
    first boundary whose flanking block means differ by less than `tol`
    relatively is returned, or None if no pair ever settles.
    """
    if window < 2:
        raise ContractViolation("detector window must hold at least 2 samples")
    if tol <= 0:
        raise ContractViolation("detector tolerance must be positive")
    j = series.currents()
    n_blocks = len(j) // window
    if n_blocks < 2:
        return None
    means = j[: n_blocks * window].reshape(n_blocks, window).mean(axis=1)
    for m in range(n_blocks - 1):
        diff = abs(means[m + 1] - means[m])
        scale = max(abs(means[m]), abs(means[m + 1]))
        if diff == 0.0 or diff < tol * scale:
            return float(series.samples[(m + 1) * window][0])
    return None
