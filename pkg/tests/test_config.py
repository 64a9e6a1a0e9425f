"""Scenario file parsing: defaults, validation, and error naming."""

import glob

import pytest

from tdse1d import (
    Absorber,
    Closed,
    Composite,
    ConfigurationError,
    GaussianFront,
    HardSource,
    SquareBarrier,
    OscillatingBarrier,
    TransparentSource,
    Uniform,
    Zero,
    load_config,
    parse_config,
)

MINIMAL_SCATTERING = """
[time]
steps = 100

[mode]
type = transparent_source
k = 2.4

[potential]
type = square_barrier

[absorber_right]
"""


class TestDefaults:
    def test_minimal_scattering_document(self):
        sc = parse_config(MINIMAL_SCATTERING)
        assert sc.grid.x0 == -30.0
        assert sc.grid.n_points == 1201
        assert sc.time.dt == 0.01
        assert sc.time.n_steps == 100
        assert isinstance(sc.mode, TransparentSource)
        src = sc.mode.source
        assert src.amplitude == 1.0 + 0.0j
        assert src.wavevector == 2.4
        assert sc.grid.position(src.s_index) == pytest.approx(-15.0)
        assert isinstance(src.front, Uniform)
        barrier = [p for p in sc.potential.parts if isinstance(p, SquareBarrier)]
        assert barrier == [SquareBarrier(5.0, -1.0, 1.0)]
        absorber = [p for p in sc.potential.parts if isinstance(p, Absorber)]
        assert absorber == [Absorber(0.1, 20.0, "right")]
        assert sc.probes == (-20.0, 10.0)
        assert sc.output_dir == "out"

    def test_closed_box_defaults(self):
        sc = parse_config("[time]\nsteps = 10\n")
        assert isinstance(sc.mode, Closed)
        assert isinstance(sc.potential, Zero)

    def test_left_absorber_defaults_track_the_grid(self):
        sc = parse_config(
            "[grid]\nx_min = -50\n[time]\nsteps = 1\n[absorber_left]\n"
        )
        assert sc.potential == Absorber(0.1, -45.0, "left")

    def test_oscillating_barrier_defaults(self):
        sc = parse_config(
            "[time]\nsteps = 1\n[potential]\ntype = oscillating_barrier\n"
        )
        assert sc.potential == OscillatingBarrier(5.0, 0.5, 1.0, -1.0, 1.0)


class TestErrorsNameTheKey:
    @pytest.mark.parametrize(
        "text,needle",
        [
            ("[grid]\nx_min = 0\n", "time.dt"),  # whole [time] section missing
            ("[time]\ndt = 0.01\n", "time.steps"),
            ("[time]\nsteps = ten\n", "time.steps"),
            ("[time]\nsteps = 1\ndt = -1\n", "time.dt"),
            ("[time]\nsteps = -5\n", "time.steps"),
            ("[tmie]\nsteps = 1\n", "tmie"),
            ("[time]\nsteps = 1\nwhen = now\n", "time.when"),
            ("[grid]\ndx = 0\n[time]\nsteps = 1\n", "grid.dx"),
            ("[time]\nsteps = 1\n[output]\nsnapshot_stride = 0\n", "snapshot_stride"),
            ("[time]\nsteps = 1\n[output]\nprobes = a,b\n", "output.probes"),
            ("[time]\nsteps = 1\n[output]\nprobes = -30\n", "output.probes"),
        ],
    )
    def test_message_names_offender(self, text, needle):
        with pytest.raises(ConfigurationError) as info:
            parse_config(text)
        assert needle in str(info.value)

    def test_duplicate_key_is_malformed(self):
        with pytest.raises(ConfigurationError):
            parse_config("[time]\nsteps = 1\nsteps = 2\n")


SOURCE_PREFIX = "[time]\nsteps = 1\n[absorber_right]\n"


class TestModeValidation:
    def test_source_needs_k(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config(SOURCE_PREFIX + "[mode]\ntype = hard_source\n")
        assert "mode.k" in str(info.value)

    def test_k_must_be_positive(self):
        with pytest.raises(ConfigurationError):
            parse_config(SOURCE_PREFIX + "[mode]\ntype = hard_source\nk = -2\n")

    def test_closed_rejects_source_keys(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config("[time]\nsteps = 1\n[mode]\nk = 2.4\n")
        assert "mode.k" in str(info.value)

    def test_gaussian_front_needs_geometry(self):
        base = SOURCE_PREFIX + "[mode]\ntype = hard_source\nk = 2.4\nfront = gaussian\n"
        with pytest.raises(ConfigurationError) as info:
            parse_config(base)
        assert "mode.x_g" in str(info.value)
        full = parse_config(base + "x_g = -10\nl_g = 3\n")
        assert full.mode.source.front == GaussianFront(-10.0, 3.0)

    def test_front_geometry_only_with_gaussian(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config(SOURCE_PREFIX + "[mode]\ntype = hard_source\nk = 2.4\nx_g = -10\n")
        assert "mode.x_g" in str(info.value)

    def test_front_must_sit_right_of_source(self):
        with pytest.raises(ConfigurationError):
            parse_config(
                SOURCE_PREFIX
                + "[mode]\ntype = hard_source\nk = 2.4\nfront = gaussian\nx_g = -18\nl_g = 3\n"
            )

    def test_amplitude_must_be_nonzero(self):
        with pytest.raises(ConfigurationError):
            parse_config(
                SOURCE_PREFIX + "[mode]\ntype = hard_source\nk = 2.4\namplitude_re = 0\n"
            )

    def test_source_position_inside_grid(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config(SOURCE_PREFIX + "[mode]\ntype = hard_source\nk = 2.4\nx_source = -99\n")
        assert "mode.x_source" in str(info.value)

    def test_source_modes_demand_an_absorber(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config("[time]\nsteps = 1\n[mode]\ntype = transparent_source\nk = 2.4\n")
        assert "absorber" in str(info.value)

    def test_bad_mode_type(self):
        with pytest.raises(ConfigurationError):
            parse_config("[time]\nsteps = 1\n[mode]\ntype = porous\n")


class TestPotentialValidation:
    def test_barrier_edges_must_be_ordered(self):
        with pytest.raises(ConfigurationError):
            parse_config("[time]\nsteps = 1\n[potential]\ntype = square_barrier\na = 1\nb = -1\n")

    def test_modulation_keys_only_for_oscillating(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config("[time]\nsteps = 1\n[potential]\ntype = square_barrier\nalpha = 0.5\n")
        assert "potential.alpha" in str(info.value)

    def test_barrier_keys_only_for_barriers(self):
        with pytest.raises(ConfigurationError):
            parse_config("[time]\nsteps = 1\n[potential]\nv0 = 5\n")

    def test_tabulated_not_expressible_in_files(self):
        with pytest.raises(ConfigurationError) as info:
            parse_config("[time]\nsteps = 1\n[potential]\ntype = tabulated\n")
        assert "tabulated" in str(info.value)

    def test_negative_absorber_strength(self):
        with pytest.raises(ConfigurationError):
            parse_config("[time]\nsteps = 1\n[absorber_right]\nc = -0.1\n")

    def test_composite_assembly_order(self):
        sc = parse_config(MINIMAL_SCATTERING + "\n[absorber_left]\nx_i = -25\n")
        assert isinstance(sc.potential, Composite)
        kinds = [type(p).__name__ for p in sc.potential.parts]
        assert kinds == ["SquareBarrier", "Absorber", "Absorber"]


class TestScenarioObject:
    def test_output_dir_override_is_a_new_value(self):
        sc = parse_config(MINIMAL_SCATTERING)
        sc2 = sc.with_output_dir("/tmp/elsewhere")
        assert sc.output_dir == "out"
        assert sc2.output_dir == "/tmp/elsewhere"

    def test_probe_parsing(self):
        sc = parse_config(MINIMAL_SCATTERING + "[output]\nprobes = -9.5, 10\n")
        assert sc.probes == (-9.5, 10.0)

    def test_missing_file_is_a_configuration_error(self):
        with pytest.raises(ConfigurationError):
            load_config("/nonexistent/nowhere.ini")


class TestShippedConfigs:
    @pytest.mark.parametrize("path", sorted(glob.glob("configs/*.ini")))
    def test_parses_clean(self, path):
        sc = load_config(path)
        assert sc.time.n_steps >= 1
        assert sc.grid.n_points >= 5
