"""Command line interface: exit codes, k grids, file handling."""

import csv

import pytest

from tdse1d import ConfigurationError
from tdse1d.cli import _k_grid, main

TINY_CLOSED = "[time]\nsteps = 5\n"

TINY_SWEEP = """
[time]
steps = 2500

[mode]
type = transparent_source
k = 2.4
x_source = -8
front = gaussian
x_g = -6
l_g = 3

[potential]
type = square_barrier

[absorber_right]
c = 0.1
x_i = 20

[absorber_left]
c = 0.004
x_i = -11

[output]
snapshot_stride = 2500
probes = -9.5, 10
dir = {out}
"""


class TestKGrid:
    def test_default_span_has_fourteen_points(self):
        ks = _k_grid(0.6, 3.2, 0.2)
        assert len(ks) == 14
        assert ks[0] == pytest.approx(0.6)
        assert ks[-1] == pytest.approx(3.2)

    def test_single_point(self):
        assert _k_grid(2.4, 2.4, 0.2) == [2.4]

    def test_bad_step(self):
        with pytest.raises(ConfigurationError):
            _k_grid(0.6, 3.2, 0.0)

    def test_reversed_span(self):
        with pytest.raises(ConfigurationError):
            _k_grid(3.2, 0.6, 0.2)


class TestValidate:
    def test_good_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.ini"
        cfg.write_text(TINY_CLOSED)
        assert main(["validate", str(cfg)]) == 0
        assert "OK" in capsys.readouterr().out

    def test_shipped_configs(self, capsys):
        for name in ("fig1", "fig2", "fig3_sweep", "fig4"):
            assert main(["validate", f"configs/{name}.ini"]) == 0

    def test_bad_key_is_exit_one(self, tmp_path, capsys):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[time]\nsteps = 5\nwhen = now\n")
        assert main(["validate", str(cfg)]) == 1
        err = capsys.readouterr().err
        assert "configuration error" in err
        assert "time.when" in err

    def test_missing_file_is_exit_one(self, capsys):
        assert main(["validate", "/nonexistent/nope.ini"]) == 1


class TestRunCommand:
    def test_run_with_out_override(self, tmp_path):
        cfg = tmp_path / "run.ini"
        cfg.write_text(TINY_CLOSED)
        out = tmp_path / "results"
        assert main(["run", str(cfg), "--out", str(out)]) == 0
        assert (out / "manifest.json").is_file()
        assert (out / "snap_0.csv").is_file()


class TestSweepCommand:
    def test_single_k_sweep(self, tmp_path, capsys):
        out = tmp_path / "swp"
        cfg = tmp_path / "sweep.ini"
        cfg.write_text(TINY_SWEEP.format(out=out))
        code = main(
            ["sweep", str(cfg), "--k-from", "2.4", "--k-to", "2.4", "--k-step", "0.2"]
        )
        assert code == 0
        assert "1 k values" in capsys.readouterr().out
        with open(out / "sweep.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 2
        assert float(rows[1][0]) == 2.4

    def test_bad_step_is_exit_one(self, tmp_path, capsys):
        cfg = tmp_path / "sweep.ini"
        cfg.write_text(TINY_SWEEP.format(out=tmp_path / "swp"))
        assert main(["sweep", str(cfg), "--k-step", "-1"]) == 1
