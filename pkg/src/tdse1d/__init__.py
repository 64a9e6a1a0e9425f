"""1D time-dependent Schrodinger equation on a lattice (Crank-Nicolson).

Reduced units throughout: hbar = 1, 2m = 1, so i dpsi/dt = -psi_xx + V psi
and a plane wave exp(i(kx - k^2 t)) travels at group velocity 2k.
"""

from .errors import ConfigurationError, ContractViolation, NumericFailure
from .state import (
    Empty,
    GaussianFront,
    SourceSpec,
    SpatialGrid,
    TimeGrid,
    Uniform,
    WaveField,
    build_grid,
    front_profile,
    gaussian_packet,
    initial_injected_state,
    plane_wave_value,
)
from .potentials import (
    Absorber,
    Composite,
    OscillatingBarrier,
    SquareBarrier,
    Tabulated,
    Zero,
    has_absorber,
    is_static,
    potential_value,
    sample_profile,
)
from .solver import (
    Closed,
    HardSource,
    SimulationState,
    StepCoefficients,
    TransparentSource,
    apply_source_corrections,
    assemble,
    build_rhs,
    run,
    step,
    thomas_solve,
)
from .observables import (
    CurrentSeries,
    ScatteringRecord,
    current_at,
    extract_rt,
    steady_state_time,
    total_norm,
)
from .analytic import (
    BarrierCoefficients,
    barrier_transmission,
    box_gaussian_field,
    free_gaussian_field,
)
from .config import Scenario, load_config, parse_config
from .runner import (
    measurement_window,
    probe_filename,
    run_scenario,
    run_sweep,
    write_sweep_csv,
)

__version__ = "0.1.0"
