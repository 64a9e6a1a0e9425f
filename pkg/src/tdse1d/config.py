"""INI scenario files -> validated Scenario values.

Schema (defaults in parentheses; [time] is the only required section):

    [grid]            x_min (-30), x_max (30), dx (0.05)
    [time]            dt (0.01), steps (required)
    [mode]            type (closed) | hard_source | transparent_source,
                      amplitude_re (1), amplitude_im (0), k, x_source (-15),
                      front (uniform) | gaussian | empty, x_g, l_g
    [potential]       type (zero) | square_barrier | oscillating_barrier,
                      v0 (5), a (-1), b (1), alpha (0.5), nu (1)
    [absorber_right]  c (0.1), x_i (20)
    [absorber_left]   c (0.1), x_i (x_min + 5)
    [output]          dir (out), snapshot_stride (100), probes (-20, 10)

Every parse failure names the offending section.key.  Source modes must
declare at least one absorber section: an injected wave with nowhere to
go just fills the box and reflects.  (That requirement binds config
files only; callers assembling runs in code can study closed boxes with
sources if they accept the reflections.)
"""

import configparser
from dataclasses import dataclass, replace
from typing import Tuple

from .errors import ConfigurationError
from .potentials import Absorber, Composite, OscillatingBarrier, SquareBarrier, Zero
from .solver import Closed, HardSource, TransparentSource
from .state import (
    Empty,
    GaussianFront,
    SourceSpec,
    SpatialGrid,
    TimeGrid,
    Uniform,
    build_grid,
)

__all__ = ["Scenario", "parse_config", "load_config"]

_SCHEMA = {
    "grid": {"x_min", "x_max", "dx"},
    "time": {"dt", "steps"},
    "mode": {"type", "amplitude_re", "amplitude_im", "k", "x_source", "front", "x_g", "l_g"},
    "potential": {"type", "v0", "a", "b", "alpha", "nu"},
    "absorber_right": {"c", "x_i"},
    "absorber_left": {"c", "x_i"},
    "output": {"dir", "snapshot_stride", "probes"},
}


@dataclass(frozen=True)
class Scenario:
    grid: SpatialGrid
    time: TimeGrid
    mode: object
    potential: object
    snapshot_stride: int
    probes: Tuple[float, ...]
    output_dir: str

    def __post_init__(self):
        if self.snapshot_stride < 1:
            raise ConfigurationError("output.snapshot_stride must be at least 1")
        for x in self.probes:
            j = self.grid.index_of(x)
            if not 1 <= j <= self.grid.n_points - 2:
                raise ConfigurationError(
                    f"output.probes entry {x} lands on a wall, not an interior point"
                )

    def with_output_dir(self, output_dir):
        return replace(self, output_dir=str(output_dir))


class _Section:
    """One section's raw values with taken-key tracking and typed getters."""

    def __init__(self, name, items):
        self.name = name
        self.items = dict(items)

    def get_float(self, key, default=None):
        raw = self.items.get(key)
        if raw is None:
            if default is None:
                raise ConfigurationError(f'missing required key "{self.name}.{key}"')
            return default
        try:
            return float(raw)
        except ValueError:
            raise ConfigurationError(
                f'key "{self.name}.{key}" must be a number, got {raw!r}'
            ) from None

    def get_int(self, key, default=None):
        raw = self.items.get(key)
        if raw is None:
            if default is None:
                raise ConfigurationError(f'missing required key "{self.name}.{key}"')
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigurationError(
                f'key "{self.name}.{key}" must be an integer, got {raw!r}'
            ) from None

    def get_choice(self, key, choices, default):
        raw = self.items.get(key, default)
        if raw not in choices:
            raise ConfigurationError(
                f'key "{self.name}.{key}" must be one of {sorted(choices)}, got {raw!r}'
            )
        return raw

    def forbid(self, keys, why):
        for key in keys:
            if key in self.items:
                raise ConfigurationError(f'key "{self.name}.{key}" {why}')


def _read_sections(text):
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"malformed config: {exc}") from None
    out = {}
    for name in cp.sections():
        if name not in _SCHEMA:
            raise ConfigurationError(f'unknown section "[{name}]"')
        for key in cp[name]:
            if key not in _SCHEMA[name]:
                raise ConfigurationError(f'unknown key "{name}.{key}"')
        out[name] = _Section(name, cp[name].items())
    return out


def _build_mode(sec: _Section, grid: SpatialGrid):
    kind = sec.get_choice("type", {"closed", "hard_source", "transparent_source"}, "closed")
    if kind == "closed":
        sec.forbid(
            ("amplitude_re", "amplitude_im", "k", "x_source", "front", "x_g", "l_g"),
            "is only valid for source modes",
        )
        return Closed()
    amplitude = complex(sec.get_float("amplitude_re", 1.0), sec.get_float("amplitude_im", 0.0))
    if amplitude == 0:
        raise ConfigurationError('key "mode.amplitude_re" / "mode.amplitude_im": amplitude must be nonzero')
    k = sec.get_float("k")
    if k <= 0:
        raise ConfigurationError(f'key "mode.k" must be positive, got {k}')
    x_source = sec.get_float("x_source", -15.0)
    try:
        s = grid.index_of(x_source)
    except ConfigurationError:
        raise ConfigurationError(
            f'key "mode.x_source" = {x_source} is outside the grid'
        ) from None
    front_kind = sec.get_choice("front", {"uniform", "gaussian", "empty"}, "uniform")
    if front_kind == "gaussian":
        x_g = sec.get_float("x_g")
        l_g = sec.get_float("l_g")
        if l_g <= 0:
            raise ConfigurationError(f'key "mode.l_g" must be positive, got {l_g}')
        front = GaussianFront(x_g=x_g, l_g=l_g)
    else:
        sec.forbid(("x_g", "l_g"), "is only valid for front = gaussian")
        front = Uniform() if front_kind == "uniform" else Empty()
    source = SourceSpec(amplitude=amplitude, wavevector=k, s_index=s, front=front)
    try:
        source.validate_on(grid)
    except ConfigurationError as exc:
        raise ConfigurationError(f"[mode] {exc}") from None
    return HardSource(source) if kind == "hard_source" else TransparentSource(source)


def _build_barrier(sec: _Section):
    kind = sec.get_choice(
        "type", {"zero", "square_barrier", "oscillating_barrier", "tabulated"}, "zero"
    )
    if kind == "zero":
        sec.forbid(("v0", "a", "b", "alpha", "nu"), "is only valid for barrier types")
        return None
    if kind == "tabulated":
        raise ConfigurationError(
            'key "potential.type": tabulated potentials carry no data keys in '
            "config files; build them through the library interface"
        )
    v0 = sec.get_float("v0", 5.0)
    a = sec.get_float("a", -1.0)
    b = sec.get_float("b", 1.0)
    if a >= b:
        raise ConfigurationError(f'key "potential.a" must be below "potential.b" ({a} >= {b})')
    if kind == "square_barrier":
        sec.forbid(("alpha", "nu"), "is only valid for oscillating_barrier")
        return SquareBarrier(v0=v0, a=a, b=b)
    return OscillatingBarrier(
        v0=v0, alpha=sec.get_float("alpha", 0.5), omega=sec.get_float("nu", 1.0), a=a, b=b
    )


def _build_absorber(sec: _Section, side, default_onset):
    c = sec.get_float("c", 0.1)
    if c < 0:
        raise ConfigurationError(f'key "{sec.name}.c" must be non-negative, got {c}')
    return Absorber(c=c, x_i=sec.get_float("x_i", default_onset), side=side)


def _parse_probes(sec: _Section):
    raw = sec.items.get("probes", "-20, 10") if sec is not None else "-20, 10"
    try:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError:
        raise ConfigurationError(
            f'key "output.probes" must be comma-separated numbers, got {raw!r}'
        ) from None


def parse_config(text: str) -> Scenario:
    """Parse one INI document into a validated Scenario."""
    sections = _read_sections(text)

    grid_sec = sections.get("grid", _Section("grid", {}))
    x_min = grid_sec.get_float("x_min", -30.0)
    x_max = grid_sec.get_float("x_max", 30.0)
    dx = grid_sec.get_float("dx", 0.05)
    if dx <= 0:
        raise ConfigurationError(f'key "grid.dx" must be positive, got {dx}')
    if x_max - x_min < 4 * dx:
        raise ConfigurationError(
            f'key "grid.x_max" leaves fewer than 5 lattice points above "grid.x_min"'
        )
    grid = build_grid(x_min, x_max, dx)

    if "time" not in sections:
        raise ConfigurationError('missing required key "time.dt" (no [time] section)')
    time_sec = sections["time"]
    dt = time_sec.get_float("dt", 0.01)
    if dt <= 0:
        raise ConfigurationError(f'key "time.dt" must be positive, got {dt}')
    steps = time_sec.get_int("steps")
    if steps < 0:
        raise ConfigurationError(f'key "time.steps" must be non-negative, got {steps}')
    time = TimeGrid(dt=dt, n_steps=steps)

    mode = _build_mode(sections.get("mode", _Section("mode", {})), grid)

    parts = []
    barrier = _build_barrier(sections.get("potential", _Section("potential", {})))
    if barrier is not None:
        parts.append(barrier)
    if "absorber_right" in sections:
        parts.append(_build_absorber(sections["absorber_right"], "right", 20.0))
    if "absorber_left" in sections:
        parts.append(_build_absorber(sections["absorber_left"], "left", x_min + 5.0))
    if not isinstance(mode, Closed) and not any(isinstance(p, Absorber) for p in parts):
        raise ConfigurationError(
            "source modes need an absorbing boundary: add [absorber_right] "
            "and/or [absorber_left]"
        )
    if not parts:
        potential = Zero()
    elif len(parts) == 1:
        potential = parts[0]
    else:
        potential = Composite(tuple(parts))

    out_sec = sections.get("output", _Section("output", {}))
    stride = out_sec.get_int("snapshot_stride", 100)
    return Scenario(
        grid=grid,
        time=time,
        mode=mode,
        potential=potential,
        snapshot_stride=stride,
        probes=_parse_probes(out_sec),
        output_dir=out_sec.items.get("dir", "out"),
    )


def load_config(path) -> Scenario:
    """Read and parse a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)
