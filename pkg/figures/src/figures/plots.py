"""Figure rendering from simulation run directories.

Reads only the documented CSV layouts — snapshots
(``t,x,re,im,density,v_re,v_im``), probe currents (``t,j_probe``) and
sweep tables (``k,T_num,R_num,T_ana,R_ana,steady_time``) — and draws
them.  Display only: nothing here computes physics, and input files are
never touched.
"""

import csv
import glob
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureJob", "FigureError", "render", "FIGURE_IDS"]

_SNAPSHOT_COLUMNS = ["t", "x", "re", "im", "density", "v_re", "v_im"]
_PROBE_COLUMNS = ["t", "j_probe"]
_SWEEP_COLUMNS = ["k", "T_num", "R_num", "T_ana", "R_ana", "steady_time"]


class FigureError(Exception):
    """Unrenderable job: missing file, bad layout, unknown figure id."""


@dataclass(frozen=True)
class FigureJob:
    input_dir: str
    figure_id: str
    output_path: str


def _read_columns(path, expected):
    """Load a CSV into named float arrays, checking the exact header."""
    if not os.path.isfile(path):
        raise FigureError(f"missing required file {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise FigureError(
                f"malformed {path}: expected columns {','.join(expected)}, "
                f"got {','.join(header) if header else 'nothing'}"
            )
        try:
            rows = [[float(tok) for tok in row] for row in reader]
        except ValueError:
            raise FigureError(f"malformed {path}: non-numeric cell") from None
    if not rows:
        raise FigureError(f"malformed {path}: no data rows")
    data = np.asarray(rows)
    if data.shape[1] != len(expected):
        raise FigureError(f"malformed {path}: ragged rows")
    return {name: data[:, i] for i, name in enumerate(expected)}


def _snapshot_times(input_dir):
    """(time, path) for every snapshot in the directory, sorted by time."""
    paths = sorted(glob.glob(os.path.join(input_dir, "snap_*.csv")))
    if not paths:
        raise FigureError(f"no snap_*.csv files in {input_dir}")
    out = []
    for path in paths:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            next(reader, None)
            first = next(reader, None)
        if not first:
            raise FigureError(f"malformed {path}: no data rows")
        try:
            out.append((float(first[0]), path))
        except ValueError:
            raise FigureError(f"malformed {path}: non-numeric cell") from None
    return sorted(out)


def _pick_snapshot(snaps, target, input_dir):
    t, path = min(snaps, key=lambda item: abs(item[0] - target))
    if abs(t - target) > 1e-6:
        have = ", ".join(f"{s[0]:g}" for s in snaps)
        raise FigureError(
            f"no snapshot at t = {target:g} in {input_dir} (have t = {have})"
        )
    return t, path


def _density_axes(ax, input_dir, times, with_final):
    """Density traces at the requested times plus potential overlays."""
    snaps = _snapshot_times(input_dir)
    chosen = [_pick_snapshot(snaps, t, input_dir) for t in times]
    if with_final:
        chosen.append(snaps[-1])
    loaded = [(t, _read_columns(path, _SNAPSHOT_COLUMNS)) for t, path in chosen]

    top = 0.0
    for i, (t, cols) in enumerate(loaded):
        label = f"t = {t:g}"
        if with_final and i == len(loaded) - 1:
            label = rf"t = {t:g} ($\simeq\infty$)"
        ax.plot(cols["x"], cols["density"], lw=1.0, label=label)
        top = max(top, float(cols["density"].max()))

    first = loaded[0][1]
    if np.any(first["v_re"] != 0.0):
        ax.plot(first["x"], first["v_re"], "k-", lw=1.5, label="V (real part)")
        top = max(top, float(first["v_re"].max()))
    v_im = np.abs(first["v_im"])
    if np.any(v_im != 0.0):
        ax.plot(
            first["x"],
            v_im * (top / v_im.max()),
            "k--",
            lw=1.2,
            label="|Im V| (arb. units)",
        )
    ax.set_xlabel("x")
    ax.set_ylabel(r"$|\psi(x,t)|^2$")
    ax.legend(loc="upper left", fontsize=8)


def _current_axes(ax, series):
    for path_cols, label, style in series:
        ax.plot(path_cols["t"], path_cols["j_probe"], style, lw=1.0, label=label)
    ax.axhline(0.0, color="0.7", lw=0.5)
    ax.set_xlabel("t")
    ax.set_ylabel("J(t)")
    ax.legend(loc="best", fontsize=8)


def _fig_density(input_dir, times, with_final):
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    _density_axes(ax, input_dir, times, with_final)
    return fig


def _fig_single_current(input_dir):
    cols = _read_columns(os.path.join(input_dir, "current_x10.csv"), _PROBE_COLUMNS)
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    _current_axes(ax, [(cols, "x = 10", "-")])
    return fig


def _fig_two_currents(input_dir):
    refl = _read_columns(os.path.join(input_dir, "current_x-20.csv"), _PROBE_COLUMNS)
    trans = _read_columns(os.path.join(input_dir, "current_x10.csv"), _PROBE_COLUMNS)
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    _current_axes(
        ax,
        [
            (trans, "transmitted, x = 10", "-"),
            (refl, "reflected, x = -20", "--"),
        ],
    )
    return fig


def _fig_sweep(input_dir):
    cols = _read_columns(os.path.join(input_dir, "sweep.csv"), _SWEEP_COLUMNS)
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(cols["k"], cols["T_ana"], "-", color="tab:blue", lw=1.2, label="T (theory)")
    ax.plot(cols["k"], cols["R_ana"], "--", color="tab:red", lw=1.2, label="R (theory)")
    ax.plot(cols["k"], cols["T_num"], "^", color="tab:blue", ms=6, ls="none",
            label="T (simulation)")
    ax.plot(cols["k"], cols["R_num"], "s", color="tab:red", ms=5, ls="none",
            label="R (simulation)")
    ax.set_xlabel("k")
    ax.set_ylabel("T, R")
    ax.set_ylim(-0.02, 1.05)
    ax.legend(loc="center right", fontsize=8)
    return fig


_RENDERERS = {
    "fig1a": lambda d: _fig_density(d, [0.0, 2.5, 5.0], with_final=True),
    "fig1b": _fig_single_current,
    "fig2a": lambda d: _fig_density(d, [0.0, 2.5, 5.0], with_final=True),
    "fig2b": _fig_two_currents,
    "fig3": _fig_sweep,
    "fig4a": lambda d: _fig_density(d, [0.0, 3.0, 6.0, 9.0], with_final=False),
    "fig4b": _fig_two_currents,
}

FIGURE_IDS = tuple(sorted(_RENDERERS))


def render(job: FigureJob) -> str:
    """Draw one figure and write it as a PNG; returns the output path.

    All inputs are read and validated before anything is written, so a
    failing job leaves no partial output file behind.
    """
    maker = _RENDERERS.get(job.figure_id)
    if maker is None:
        raise FigureError(
            f"unknown figure id {job.figure_id!r}; valid: {', '.join(FIGURE_IDS)}"
        )
    fig = maker(job.input_dir)
    parent = os.path.dirname(os.path.abspath(job.output_path))
    os.makedirs(parent, exist_ok=True)
    try:
        fig.savefig(job.output_path, dpi=150, format="png")
    finally:
        plt.close(fig)
    return job.output_path
