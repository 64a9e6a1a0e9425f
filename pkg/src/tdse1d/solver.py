"""Crank-Nicolson propagation of i dpsi/dt = -psi_xx + V psi.

One step of size dt on a lattice with spacing dx solves the tridiagonal
system

    alpha psi_{j+1}^{k+1} + beta_j psi_j^{k+1} + alpha psi_{j-1}^{k+1} = r_j

with alpha = -i dt/(2 dx^2) and r_j assembled from the current field.
The walls are hard (psi = 0 at both ends); open behaviour comes from
absorbing potentials, not from the boundary condition.  Plane-wave
sources enter either by pinning the amplitude at one lattice point
(hard source) or by adding drive terms to the two rows flanking the
injection point so that the point stays transparent to waves returning
from the right.
"""

from dataclasses import dataclass

import numpy as np

try:
    from numba import njit
except Exception:  # pragma: no cover - numba is a declared dependency

    def njit(**_kwargs):
        def deco(fn):
            return fn

        return deco


from .errors import ConfigurationError, ContractViolation, NumericFailure
from .state import SourceSpec, SpatialGrid, TimeGrid, WaveField
from .potentials import is_static, sample_profile

__all__ = [
    "Closed",
    "HardSource",
    "TransparentSource",
    "StepCoefficients",
    "SimulationState",
    "assemble",
    "build_rhs",
    "apply_source_corrections",
    "thomas_solve",
    "step",
    "run",
]


@dataclass(frozen=True)
class Closed:
    """No source; whatever the initial field holds just evolves."""


@dataclass(frozen=True)
class HardSource:
    source: SourceSpec


@dataclass(frozen=True)
class TransparentSource:
    source: SourceSpec


@dataclass(frozen=True)
class StepCoefficients:
    """One step's matrix entries, sampled on the full lattice.

    beta_bar (the explicit-side diagonal) equals 2 - beta, which for a
    real potential is conj(beta).  For a complex (absorbing) potential it
    is intentionally not the conjugate: both time levels must damp, not
    one damp and the other amplify.
    """

    alpha: complex
    beta: np.ndarray
    beta_bar: np.ndarray


@dataclass(frozen=True)
class SimulationState:
    field: WaveField
    step_index: int
    dt: float

    @property
    def time(self):
        # multiplication, never accumulation: no drift across long runs
        return self.step_index * self.dt


def assemble(grid: SpatialGrid, dt, v_now, v_next) -> StepCoefficients:
    """Matrix coefficients for one step between potential samples.

    alpha = -i dt/(2 dx^2); beta = 1 + i dt/dx^2 + (i dt/4)(V^k+1 + V^k).
    The dt/4 weight on each potential level is the trapezoid average of V
    folded into the Cayley half step.
    """
    if dt <= 0:
        raise ConfigurationError("time step must be positive")
    v_now = np.asarray(v_now, dtype=np.complex128)
    v_next = np.asarray(v_next, dtype=np.complex128)
    if v_now.shape != (grid.n_points,) or v_next.shape != (grid.n_points,):
        raise ContractViolation("potential samples must match the grid length")
    dx = grid.dx
    alpha = -0.5j * dt / (dx * dx)
    beta = 1.0 + 1j * dt / (dx * dx) + 0.25j * dt * (v_next + v_now)
    return StepCoefficients(alpha=alpha, beta=beta, beta_bar=2.0 - beta)


def build_rhs(coeffs: StepCoefficients, values):
    """Explicit side r_j = alpha* (psi_{j+1} + psi_{j-1}) + beta_bar_j psi_j.

    Returned full-length; the wall entries stay zero (psi_0 = psi_N = 0).
    """
    values = np.asarray(values, dtype=np.complex128)
    r = np.zeros_like(values)
    r[1:-1] = (
        np.conj(coeffs.alpha) * (values[2:] + values[:-2])
        + coeffs.beta_bar[1:-1] * values[1:-1]
    )
    return r


def apply_source_corrections(
    rhs, coeffs: StepCoefficients, source: SourceSpec, grid: SpatialGrid, t_now, t_next
):
    """Add the transparent-source drive to the two rows flanking s.

    Row s receives the plane wave evaluated at s+1 through both time
    levels of the off-diagonal coupling; row s+1 receives it evaluated
    at s.  Together they emit the drive rightward while waves returning
    from the right cross lattice point s untouched.
    """
    s = source.s_index
    x_s = grid.position(s)
    x_s1 = grid.position(s + 1)
    rhs[s] += coeffs.alpha * (source.phi(x_s1, t_next) + source.phi(x_s1, t_now))
    rhs[s + 1] += np.conj(coeffs.alpha) * (source.phi(x_s, t_next) + source.phi(x_s, t_now))
    return rhs


@njit(cache=True)
def _thomas_kernel(alpha, diag, rhs, out):
    n = diag.shape[0]
    cp = np.empty(n, np.complex128)
    piv = diag[0]
    if abs(piv) <= 1e-14:
        return 0
    cp[0] = alpha / piv
    out[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diag[i] - alpha * cp[i - 1]
        if abs(piv) <= 1e-14:
            return i
        cp[i] = alpha / piv
        out[i] = (rhs[i] - alpha * out[i - 1]) / piv
    for i in range(n - 2, -1, -1):
        out[i] = out[i] - cp[i] * out[i + 1]
    return -1


def thomas_solve(alpha, beta, rhs):
    """Solve the symmetric tridiagonal system with constant off-diagonal.

    Rows are alpha psi_{j+1} + beta_j psi_j + alpha psi_{j-1} = r_j with
    zero Dirichlet values outside the passed range.  Forward elimination
    with back substitution; a pivot below 1e-14 aborts (for these
    diagonally dominant Crank-Nicolson matrices that signals a broken
    configuration, not roundoff).
    """
    beta = np.ascontiguousarray(beta, dtype=np.complex128)
    rhs = np.ascontiguousarray(rhs, dtype=np.complex128)
    if beta.ndim != 1 or beta.shape != rhs.shape or beta.shape[0] < 1:
        raise ContractViolation("diagonal and rhs must be equal-length vectors")
    out = np.empty_like(rhs)
    bad = _thomas_kernel(complex(alpha), beta, rhs, out)
    if bad >= 0:
        raise NumericFailure(f"tridiagonal pivot below 1e-14 at row {bad}")
    return out


class _Workspace:
    """Per-run cache: coefficients are rebuilt only when V depends on t."""

    def __init__(self, grid, spec, dt):
        self.grid = grid
        self.spec = spec
        self.dt = dt
        self.static = is_static(spec)
        self._t_cached = None
        self._v_cached = None
        if self.static:
            v = sample_profile(spec, grid, 0.0)
            self.coeffs_static = assemble(grid, dt, v, v)

    def coefficients(self, t_now, t_next):
        if self.static:
            return self.coeffs_static
        if self._t_cached == t_now:
            v_now = self._v_cached
        else:
            v_now = sample_profile(self.spec, self.grid, t_now)
        v_next = sample_profile(self.spec, self.grid, t_next)
        self._t_cached, self._v_cached = t_next, v_next
        return assemble(self.grid, self.dt, v_now, v_next)


def _advance(values, mode, ws: _Workspace, t_now, t_next):
    grid = ws.grid
    coeffs = ws.coefficients(t_now, t_next)
    if isinstance(mode, HardSource):
        s = mode.source.s_index
        x_s = grid.position(s)
        values[s] = mode.source.phi(x_s, t_now)
        rhs = build_rhs(coeffs, values)
        rhs[s + 1] += np.conj(coeffs.alpha) * mode.source.phi(x_s, t_next)
        lo = s + 1
    else:
        rhs = build_rhs(coeffs, values)
        if isinstance(mode, TransparentSource):
            apply_source_corrections(rhs, coeffs, mode.source, grid, t_now, t_next)
        lo = 1
    hi = grid.n_points - 1
    values[lo:hi] = thomas_solve(coeffs.alpha, coeffs.beta[lo:hi], rhs[lo:hi])
    values[hi] = 0.0
    if isinstance(mode, HardSource):
        values[s] = mode.source.phi(x_s, t_next)
    else:
        values[0] = 0.0
    return values


def _validate_mode(mode, grid):
    if not isinstance(mode, (Closed, HardSource, TransparentSource)):
        raise ContractViolation(f"unknown run mode {mode!r}")
    if not isinstance(mode, Closed):
        mode.source.validate_on(grid)


def step(state: SimulationState, spec, mode) -> SimulationState:
    """Advance one Crank-Nicolson step; fails fast on non-finite output."""
    grid = state.field.grid
    _validate_mode(mode, grid)
    ws = _Workspace(grid, spec, state.dt)
    values = _advance(state.field.values.copy(), mode, ws, state.time,
                      (state.step_index + 1) * state.dt)
    if not np.all(np.isfinite(values.view(np.float64))):
        raise NumericFailure(
            f"non-finite amplitude after step {state.step_index + 1}",
            step_index=state.step_index + 1,
        )
    return SimulationState(WaveField(grid, values), state.step_index + 1, state.dt)


def run(initial: WaveField, spec, mode, time: TimeGrid, observer=None):
    """Step the field through the whole time grid.

    observer(step_index, t, values) is called once with the initial data
    (step 0) and then after every step; values is a view into the running
    buffer, so copy anything kept beyond the call.  Any non-finite
    amplitude aborts with the failing step recorded on the exception.
    """
    grid = initial.grid
    _validate_mode(mode, grid)
    ws = _Workspace(grid, spec, time.dt)
    values = initial.values.copy()
    if observer is not None:
        observer(0, 0.0, values)
    for k in range(time.n_steps):
        try:
            _advance(values, mode, ws, k * time.dt, (k + 1) * time.dt)
        except NumericFailure as exc:
            if exc.step_index is None:
                exc.step_index = k + 1
            raise
        if not np.all(np.isfinite(values.view(np.float64))):
            raise NumericFailure(
                f"non-finite amplitude after step {k + 1}", step_index=k + 1
            )
        if observer is not None:
            observer(k + 1, (k + 1) * time.dt, values)
    return WaveField(grid, values)
