"""Scenario execution and file output: snapshots, probe currents, sweeps.

All numeric columns print with 17 significant digits, enough to
round-trip binary64 exactly, so re-running a scenario reproduces its
CSVs byte for byte.
"""

import csv
import json
import os
from dataclasses import replace

import numpy as np

from .analytic import barrier_transmission
from .errors import ConfigurationError, ContractViolation, NumericFailure
from .config import Scenario
from .observables import CurrentSeries, ScatteringRecord, extract_rt, steady_state_time
from .potentials import Absorber, Composite, SquareBarrier, is_static, sample_profile
from .solver import Closed, HardSource, TransparentSource, run
from .state import WaveField, initial_injected_state

__all__ = [
    "run_scenario",
    "run_sweep",
    "write_sweep_csv",
    "probe_filename",
    "measurement_window",
]


def _fmt(value):
    return f"{value:.17g}"


def probe_filename(x):
    return f"current_x{x:g}.csv"


def _initial_field(scenario: Scenario, initial):
    if initial is not None:
        if initial.grid != scenario.grid:
            raise ConfigurationError("initial field lives on a different grid")
        return initial
    if isinstance(scenario.mode, Closed):
        return WaveField(scenario.grid, np.zeros(scenario.grid.n_points, complex))
    return initial_injected_state(scenario.grid, scenario.mode.source)


def _write_snapshot(path, t, grid, values, v_samples):
    x = grid.positions()
    re = values.real
    im = values.imag
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x", "re", "im", "density", "v_re", "v_im"])
        for j in range(grid.n_points):
            w.writerow(
                [
                    _fmt(t),
                    _fmt(x[j]),
                    _fmt(re[j]),
                    _fmt(im[j]),
                    _fmt(re[j] * re[j] + im[j] * im[j]),
                    _fmt(v_samples[j].real),
                    _fmt(v_samples[j].imag),
                ]
            )


def _write_probe(path, samples):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "j_probe"])
        for t, j in samples:
            w.writerow([_fmt(t), _fmt(j)])


def run_scenario(scenario: Scenario, initial=None):
    """Run one scenario, writing all outputs under its output directory.

    Returns (exit_code, probe series by coordinate, final field or None).
    Exit 0 on success; a numeric failure stops stepping, is recorded in
    manifest.json under failed_step, and yields exit 2.  `initial`
    overrides the default starting field (zero for closed runs, the
    injected plane-wave profile for source runs).
    """
    grid = scenario.grid
    out_dir = scenario.output_dir
    os.makedirs(out_dir, exist_ok=True)
    probe_indices = [grid.index_of(x) for x in scenario.probes]
    inv_2dx = 1.0 / (2.0 * grid.dx)
    probe_samples = {x: [] for x in scenario.probes}
    snapshots = []
    stride = scenario.snapshot_stride

    def observer(k, t, values):
        for x, j in zip(scenario.probes, probe_indices):
            cur = 2.0 * np.imag(np.conj(values[j]) * (values[j + 1] - values[j - 1]) * inv_2dx)
            probe_samples[x].append((t, float(cur)))
        if k % stride == 0 or k == scenario.time.n_steps:
            name = f"snap_{k}.csv"
            v = sample_profile(scenario.potential, grid, t)
            _write_snapshot(os.path.join(out_dir, name), t, grid, values, v)
            snapshots.append(name)

    field = _initial_field(scenario, initial)
    status, failed_step, final = "ok", None, None
    try:
        final = run(field, scenario.potential, scenario.mode, scenario.time, observer)
    except NumericFailure as exc:
        status, failed_step = "numeric_failure", exc.step_index

    probe_files = {}
    for x in scenario.probes:
        name = probe_filename(x)
        _write_probe(os.path.join(out_dir, name), probe_samples[x])
        probe_files[f"{x:g}"] = name

    manifest = {
        "status": status,
        "failed_step": failed_step,
        "steps_requested": scenario.time.n_steps,
        "steps_completed": (failed_step - 1) if failed_step else scenario.time.n_steps,
        "grid": {
            "x_min": grid.x0,
            "x_max": grid.x_max,
            "dx": grid.dx,
            "n_points": grid.n_points,
        },
        "time": {"dt": scenario.time.dt, "steps": scenario.time.n_steps},
        "mode": type(scenario.mode).__name__,
        "snapshots": snapshots,
        "probes": probe_files,
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    series = {
        x: CurrentSeries(probe_index=j, samples=tuple(probe_samples[x]))
        for x, j in zip(scenario.probes, probe_indices)
    }
    return (0 if status == "ok" else 2), series, final


def _find_barrier(potential):
    if isinstance(potential, SquareBarrier):
        return potential
    if isinstance(potential, Composite):
        found = [p for p in potential.parts if isinstance(p, SquareBarrier)]
        if len(found) == 1:
            return found[0]
    raise ConfigurationError("a sweep needs exactly one static square barrier")


def _scale_left_absorbers(potential, k):
    # Constant optical depth: the absorber's reflection floor scales with
    # the wavelength, so its strength must track k to damp every sweep
    # point equally well.
    if isinstance(potential, Absorber) and potential.side == "left":
        return replace(potential, c=potential.c * k)
    if isinstance(potential, Composite):
        return Composite(tuple(_scale_left_absorbers(p, k) for p in potential.parts))
    return potential


def measurement_window(k, dt, n_samples):
    """Number of trailing samples to average: two drive beats, >= 200."""
    period_steps = int(np.ceil(2.0 * (2.0 * np.pi / (k * k)) / dt))
    return min(max(period_steps, 200), n_samples)


def run_sweep(scenario: Scenario, k_values):
    """One simulation per k; T/R from late-window probe currents.

    The transmitted probe is the rightmost configured probe, the
    reflected probe the leftmost.  Each sub-run writes its files under
    <output_dir>/k_<value>/; records land in sweep.csv sorted by k.
    Numeric failures skip that k and are listed in the manifest; they
    flip the exit code to 2 but never abort the remaining k values.
    """
    if not isinstance(scenario.mode, TransparentSource):
        raise ConfigurationError("sweeps require transparent_source mode")
    if not is_static(scenario.potential):
        raise ConfigurationError("sweeps require a static potential")
    barrier = _find_barrier(scenario.potential)
    if len(scenario.probes) < 2:
        raise ConfigurationError("sweeps need a reflected and a transmitted probe")
    x_t = max(scenario.probes)
    x_r = min(scenario.probes)
    length = barrier.b - barrier.a

    records, failures = [], []
    for k in sorted(k_values):
        sub = replace(
            scenario,
            mode=TransparentSource(replace(scenario.mode.source, wavevector=k)),
            potential=_scale_left_absorbers(scenario.potential, k),
            output_dir=os.path.join(scenario.output_dir, f"k_{k:g}"),
        )
        code, series, _ = run_scenario(sub)
        if code != 0:
            failures.append({"k": k, "reason": "numeric failure, see sub-run manifest"})
            continue
        n_win = measurement_window(k, scenario.time.dt, len(series[x_t].samples))
        j_t = float(np.mean(series[x_t].currents()[-n_win:]))
        j_r = float(np.mean(series[x_r].currents()[-n_win:]))
        t_num, r_num = extract_rt(j_t, j_r, k, scenario.mode.source.amplitude)
        t_ana, r_ana = barrier_transmission(k, barrier.v0, length)
        steady = steady_state_time(series[x_t])
        try:
            records.append(
                ScatteringRecord(
                    k=k,
                    T_num=t_num,
                    R_num=r_num,
                    T_ana=t_ana,
                    R_ana=r_ana,
                    steady_time=float("nan") if steady is None else steady,
                )
            )
        except ContractViolation as exc:
            failures.append({"k": k, "reason": str(exc)})

    os.makedirs(scenario.output_dir, exist_ok=True)
    write_sweep_csv(os.path.join(scenario.output_dir, "sweep.csv"), records)
    manifest = {
        "status": "ok" if not failures else "partial",
        "k_completed": [r.k for r in records],
        "failures": failures,
    }
    with open(os.path.join(scenario.output_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return (0 if not failures else 2), records


def write_sweep_csv(path, records):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "T_num", "R_num", "T_ana", "R_ana", "steady_time"])
        for r in sorted(records, key=lambda r: r.k):
            w.writerow(
                [_fmt(r.k), _fmt(r.T_num), _fmt(r.R_num), _fmt(r.T_ana), _fmt(r.R_ana), _fmt(r.steady_time)]
            )
