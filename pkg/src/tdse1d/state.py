"""Lattice, wave field, and initial-condition constructors.

Everything is expressed in reduced units: hbar = 1, 2m = 1, so the free
dispersion is omega = k^2 and a plane wave moves at group velocity 2k.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, ContractViolation

__all__ = [
    "SpatialGrid",
    "TimeGrid",
    "Uniform",
    "GaussianFront",
    "Empty",
    "SourceSpec",
    "WaveField",
    "build_grid",
    "plane_wave_value",
    "front_profile",
    "initial_injected_state",
    "gaussian_packet",
]

# fp slop used when snapping coordinates onto lattice indices; keeps
# registration deterministic when (x - x0)/dx lands within rounding of an
# integer (e.g. 580.00000000000011).
_SNAP = 1e-9


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform closed lattice x_j = x0 + j*dx, j = 0..n_points-1."""

    x0: float
    dx: float
    n_points: int

    def __post_init__(self):
        if self.dx <= 0:
            raise ConfigurationError("grid dx must be positive")
        if self.n_points < 5:
            raise ConfigurationError("grid needs at least 5 points")

    def position(self, j):
        return self.x0 + j * self.dx

    def positions(self):
        return self.x0 + self.dx * np.arange(self.n_points)

    def index_of(self, x):
        """Nearest lattice index for coordinate x (must land on the grid)."""
        j = int(round((x - self.x0) / self.dx))
        if j < 0 or j >= self.n_points:
            raise ConfigurationError(f"coordinate {x} is outside the grid")
        return j

    @property
    def x_max(self):
        return self.position(self.n_points - 1)


@dataclass(frozen=True)
class TimeGrid:
    dt: float
    n_steps: int

    def __post_init__(self):
        if self.dt <= 0:
            raise ConfigurationError("time step dt must be positive")
        if self.n_steps < 0:
            raise ConfigurationError("n_steps must be non-negative")


@dataclass(frozen=True)
class Uniform:
    """g(x) = 1: the injected wave starts fully developed up to the walls."""


@dataclass(frozen=True)
class Empty:
    """g(x) = 0: start from vacuum and let the source build the wave."""


@dataclass(frozen=True)
class GaussianFront:
    """g = 1 up to x_g, then a Gaussian tail of width l_g.

    Keeps the initial state from slamming into the far boundary while
    still filling the region near the source.
    """

    x_g: float
    l_g: float

    def __post_init__(self):
        if self.l_g <= 0:
            raise ConfigurationError("front width l_g must be positive")


@dataclass(frozen=True)
class SourceSpec:
    """Plane-wave injection Phi0(x,t) = A exp(i(kx - k^2 t)) at lattice s."""

    amplitude: complex
    wavevector: float
    s_index: int
    front: object = field(default_factory=Uniform)

    def validate_on(self, grid: SpatialGrid):
        n = grid.n_points - 1
        if not (1 <= self.s_index <= n - 3):
            raise ConfigurationError(
                f"source index {self.s_index} leaves no room on the lattice "
                f"(need 1 <= s <= {n - 3})"
            )
        if isinstance(self.front, GaussianFront):
            if self.front.x_g <= grid.position(self.s_index):
                raise ConfigurationError(
                    "front turnover x_g must lie right of the source point"
                )

    def phi(self, x, t):
        return plane_wave_value(self.amplitude, self.wavevector, x, t)


class WaveField:
    """Complex amplitudes on a SpatialGrid. Values are owned, not aliased."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: SpatialGrid, values):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (grid.n_points,):
            raise ContractViolation(
                f"field length {values.shape} does not match grid "
                f"({grid.n_points} points)"
            )
        if not np.all(np.isfinite(values.view(np.float64))):
            raise ContractViolation("field contains non-finite amplitudes")
        self.grid = grid
        self.values = values

    def copy(self):
        return WaveField(self.grid, self.values.copy())

    def density(self):
        return np.abs(self.values) ** 2


def build_grid(x_min, x_max, dx):
    """Closed lattice covering [x_min, x_max].

    The upper end snaps down to the nearest lattice point so dx stays
    bit-exact as configured.
    """
    if dx <= 0:
        raise ConfigurationError("grid dx must be positive")
    if x_max <= x_min:
        raise ConfigurationError("grid interval is inverted or empty")
    n_points = int(np.floor((x_max - x_min) / dx + _SNAP)) + 1
    return SpatialGrid(x0=float(x_min), dx=float(dx), n_points=n_points)


def plane_wave_value(A, k, x, t):
    """A exp(i(kx - k^2 t)); x may be an array."""
    return A * np.exp(1j * (k * np.asarray(x) - k * k * t))


def front_profile(front, x, x_s):
    """Initial envelope g(x) right of the source; scalar or array x."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= x_s):
        raise ContractViolation("front profile is only defined right of the source")
    if isinstance(front, Uniform):
        return np.ones_like(x)
    if isinstance(front, Empty):
        return np.zeros_like(x)
    if isinstance(front, GaussianFront):
        out = np.ones_like(x)
        tail = x > front.x_g
        out[tail] = np.exp(-(((x[tail] - front.x_g) / front.l_g) ** 2))
        return out
    raise ContractViolation(f"unknown front descriptor {front!r}")


def initial_injected_state(grid: SpatialGrid, source: SourceSpec):
    """psi(x,0): zero at and left of the source, Phi0 * g to the right."""
    source.validate_on(grid)
    values = np.zeros(grid.n_points, dtype=np.complex128)
    s = source.s_index
    xs_right = grid.positions()[s + 1 :]
    g = front_profile(source.front, xs_right, grid.position(s))
    values[s + 1 :] = source.phi(xs_right, 0.0) * g
    return WaveField(grid, values)


def gaussian_packet(grid: SpatialGrid, center, sigma, k0):
    """Normalized Gaussian wavepacket with carrier k0.

    The continuum normalization (2 pi sigma^2)^(-1/4) already gives a
    discrete norm of 1 to well below 1e-6 for any packet that is resolved
    by the lattice, so no renormalization is applied.
    """
    if sigma <= 0:
        raise ContractViolation("packet width sigma must be positive")
    if center - 5 * sigma < grid.x0 or center + 5 * sigma > grid.x_max:
        raise ConfigurationError(
            "gaussian packet support (center +/- 5 sigma) is clipped by the grid"
        )
    x = grid.positions()
    psi = (2 * np.pi * sigma**2) ** (-0.25) * np.exp(
        -((x - center) ** 2) / (4 * sigma**2) + 1j * k0 * x
    )
    return WaveField(grid, psi)
