"""Potential models V(x,t) = V_real(x,t) + i V_imag(x).

Real parts: static or harmonically modulated rectangular barriers.
Imaginary parts: quadratic absorbing ramps near the lattice edges, always
with Im(V) <= 0 so they can only remove probability.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ConfigurationError, ContractViolation
from .state import SpatialGrid

__all__ = [
    "Zero",
    "SquareBarrier",
    "OscillatingBarrier",
    "Absorber",
    "Tabulated",
    "Composite",
    "potential_value",
    "sample_profile",
    "is_static",
    "has_absorber",
]

_SNAP = 1e-9


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class SquareBarrier:
    v0: float
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ConfigurationError("barrier needs a < b")


@dataclass(frozen=True)
class OscillatingBarrier:
    """Rectangular barrier with height V0 (1 + alpha cos(omega t))."""

    v0: float
    alpha: float
    omega: float
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ConfigurationError("barrier needs a < b")


@dataclass(frozen=True)
class Absorber:
    """-i c (x - x_i)^2 beyond the onset x_i, on the chosen side."""

    c: float
    x_i: float
    side: str  # "right" or "left"

    def __post_init__(self):
        if self.c < 0:
            raise ConfigurationError("absorber strength c must be >= 0")
        if self.side not in ("right", "left"):
            raise ConfigurationError(f"absorber side must be right/left, got {self.side!r}")


@dataclass(frozen=True)
class Tabulated:
    """Samples pinned to one specific grid; evaluation off-grid is an error."""

    grid: SpatialGrid
    samples: tuple

    def __post_init__(self):
        if len(self.samples) != self.grid.n_points:
            raise ConfigurationError("tabulated samples do not match their grid")
        if any(complex(v).imag > 0 for v in self.samples):
            raise ConfigurationError(
                "tabulated potential has Im(V) > 0 somewhere; a positive "
                "imaginary part injects probability instead of absorbing it"
            )


@dataclass(frozen=True)
class Composite:
    parts: Tuple[object, ...]

    def __post_init__(self):
        if _depth(self) > 8:
            raise ConfigurationError("potential nesting deeper than 8")


def _depth(spec):
    if isinstance(spec, Composite):
        return 1 + max((_depth(p) for p in spec.parts), default=0)
    return 1


def _barrier_height(spec, t):
    if isinstance(spec, SquareBarrier):
        return spec.v0
    return spec.v0 * (1.0 + spec.alpha * np.cos(spec.omega * t))


def potential_value(spec, x, t=0.0):
    """Pointwise V(x,t); the barrier includes both of its endpoints."""
    if isinstance(spec, Zero):
        return 0.0 + 0.0j
    if isinstance(spec, (SquareBarrier, OscillatingBarrier)):
        if spec.a <= x <= spec.b:
            return complex(_barrier_height(spec, t))
        return 0.0 + 0.0j
    if isinstance(spec, Absorber):
        if spec.side == "right" and x > spec.x_i:
            return -1j * spec.c * (x - spec.x_i) ** 2
        if spec.side == "left" and x < spec.x_i:
            return -1j * spec.c * (x - spec.x_i) ** 2
        return 0.0 + 0.0j
    if isinstance(spec, Tabulated):
        f = (x - spec.grid.x0) / spec.grid.dx
        j = int(round(f))
        if abs(f - j) > _SNAP or not (0 <= j < spec.grid.n_points):
            raise ConfigurationError(
                f"tabulated potential evaluated off its grid at x={x}"
            )
        return complex(spec.samples[j])
    if isinstance(spec, Composite):
        return sum((potential_value(p, x, t) for p in spec.parts), 0.0 + 0.0j)
    raise ContractViolation(f"unknown potential spec {spec!r}")


def _rect_weights(grid: SpatialGrid, a, b):
    """Lattice weights for the indicator of [a, b].

    A lattice sample that lands exactly on a discontinuity edge carries
    weight 1/2: its cell straddles the edge, half inside and half outside.
    This keeps the effective thickness of the sampled slab equal to b - a;
    full-weight edge samples would thicken it by one lattice cell, which
    is a percent-level distortion of transmission near resonances.
    """
    fa = (a - grid.x0) / grid.dx
    fb = (b - grid.x0) / grid.dx
    ja = max(int(np.ceil(fa - _SNAP)), 0)
    jb = min(int(np.floor(fb + _SNAP)), grid.n_points - 1)
    w = np.zeros(grid.n_points)
    if ja > jb:
        return w
    w[ja : jb + 1] = 1.0
    if abs(fa - round(fa)) < _SNAP and int(round(fa)) == ja:
        w[ja] = 0.5
    if abs(fb - round(fb)) < _SNAP and int(round(fb)) == jb:
        w[jb] = 0.5
    return w


def sample_profile(spec, grid: SpatialGrid, t=0.0):
    """V sampled on every lattice point, as used by the stepper."""
    x = grid.positions()
    if isinstance(spec, Zero):
        return np.zeros(grid.n_points, dtype=np.complex128)
    if isinstance(spec, (SquareBarrier, OscillatingBarrier)):
        return (_barrier_height(spec, t) * _rect_weights(grid, spec.a, spec.b)).astype(
            np.complex128
        )
    if isinstance(spec, Absorber):
        if spec.side == "right":
            ramp = np.where(x > spec.x_i, (x - spec.x_i) ** 2, 0.0)
        else:
            ramp = np.where(x < spec.x_i, (x - spec.x_i) ** 2, 0.0)
        return -1j * spec.c * ramp
    if isinstance(spec, Tabulated):
        if (
            spec.grid.n_points != grid.n_points
            or abs(spec.grid.x0 - grid.x0) > _SNAP * grid.dx
            or abs(spec.grid.dx - grid.dx) > _SNAP * grid.dx
        ):
            raise ConfigurationError("tabulated potential bound to a different grid")
        return np.asarray(spec.samples, dtype=np.complex128)
    if isinstance(spec, Composite):
        out = np.zeros(grid.n_points, dtype=np.complex128)
        for p in spec.parts:
            out += sample_profile(p, grid, t)
        return out
    raise ContractViolation(f"unknown potential spec {spec!r}")


def is_static(spec):
    if isinstance(spec, OscillatingBarrier):
        return spec.alpha == 0.0
    if isinstance(spec, Composite):
        return all(is_static(p) for p in spec.parts)
    return True


def has_absorber(spec):
    if isinstance(spec, Absorber):
        return spec.c > 0
    if isinstance(spec, Composite):
        return any(has_absorber(p) for p in spec.parts)
    return False
