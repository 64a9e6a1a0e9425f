"""End-to-end: generate run CSVs through the simulator CLI, then render.

The simulator is exercised strictly through its external surface — the
`tdse1d` console script, the shipped config files, and the CSV layouts.
"""

import hashlib
import re
import shutil
import subprocess
from pathlib import Path

import pytest

from figures import FIGURE_IDS, FigureError, FigureJob, render
from figures.cli import main

ROOT = Path(__file__).resolve().parents[2]
CONFIGS = ROOT / "configs"

# figure id -> which run directory feeds it
SOURCES = {
    "fig1a": "fig1",
    "fig1b": "fig1",
    "fig2a": "fig2",
    "fig2b": "fig2",
    "fig3": "fig3",
    "fig4a": "fig4",
    "fig4b": "fig4",
}

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _tree_digest(root):
    out = {}
    for path in sorted(Path(root).rglob("*")):
        if path.is_file():
            out[str(path)] = hashlib.sha256(path.read_bytes()).hexdigest()
    return out


@pytest.fixture(scope="session")
def runs(tmp_path_factory):
    """All four scenario runs, produced by the simulator CLI."""
    base = tmp_path_factory.mktemp("runs")
    for name in ("fig1", "fig2", "fig4"):
        subprocess.run(
            ["tdse1d", "run", str(CONFIGS / f"{name}.ini"), "--out", str(base / name)],
            check=True,
            capture_output=True,
        )
    sweep_cfg = base / "fig3_sweep.ini"
    text = (CONFIGS / "fig3_sweep.ini").read_text()
    sweep_cfg.write_text(re.sub(r"dir = .*", f"dir = {base / 'fig3'}", text))
    subprocess.run(
        ["tdse1d", "sweep", str(sweep_cfg)], check=True, capture_output=True
    )
    return base


class TestAllFiguresRender:
    def test_seven_images(self, runs, tmp_path):
        rendered = []
        for figure_id in FIGURE_IDS:
            out = tmp_path / f"{figure_id}.png"
            code = main([figure_id, str(runs / SOURCES[figure_id]), str(out)])
            assert code == 0, figure_id
            blob = out.read_bytes()
            assert blob.startswith(PNG_MAGIC), figure_id
            assert len(blob) > 5000, figure_id
            rendered.append(out)
        ok = len(rendered) == 7
        print(f"[10] all figure jobs render: {'PASS' if ok else 'FAIL'} "
              f"({len(rendered)} PNG files)")
        assert ok

    def test_rendering_leaves_inputs_untouched(self, runs, tmp_path):
        before = _tree_digest(runs / "fig2")
        render(FigureJob(str(runs / "fig2"), "fig2a", str(tmp_path / "a.png")))
        render(FigureJob(str(runs / "fig2"), "fig2b", str(tmp_path / "b.png")))
        assert _tree_digest(runs / "fig2") == before


class TestErrorPaths:
    def test_empty_input_dir(self, tmp_path):
        out = tmp_path / "out.png"
        code = main(["fig1a", str(tmp_path / "nothing_here"), str(out)])
        assert code == 1
        assert not out.exists()

    def test_missing_probe_file_named(self, runs, tmp_path, capsys):
        partial = tmp_path / "partial"
        partial.mkdir()
        shutil.copy(runs / "fig1" / "snap_0.csv", partial)
        out = tmp_path / "out.png"
        assert main(["fig1b", str(partial), str(out)]) == 1
        assert "current_x10.csv" in capsys.readouterr().err
        assert not out.exists()

    def test_missing_snapshot_time_named(self, runs, tmp_path, capsys):
        partial = tmp_path / "partial"
        partial.mkdir()
        shutil.copy(runs / "fig1" / "snap_0.csv", partial)
        assert main(["fig1a", str(partial), str(tmp_path / "o.png")]) == 1
        assert "t = 2.5" in capsys.readouterr().err

    def test_wrong_header_named(self, tmp_path, capsys):
        bad = tmp_path / "run"
        bad.mkdir()
        (bad / "current_x10.csv").write_text("time,current\n0,0\n")
        assert main(["fig1b", str(bad), str(tmp_path / "o.png")]) == 1
        err = capsys.readouterr().err
        assert "current_x10.csv" in err and "column" in err

    def test_non_numeric_cell_named(self, tmp_path, capsys):
        bad = tmp_path / "run"
        bad.mkdir()
        (bad / "current_x10.csv").write_text("t,j_probe\n0,zero\n")
        assert main(["fig1b", str(bad), str(tmp_path / "o.png")]) == 1
        assert "current_x10.csv" in capsys.readouterr().err

    def test_unknown_figure_id(self, tmp_path, capsys):
        assert main(["fig9z", str(tmp_path), str(tmp_path / "o.png")]) == 1
        err = capsys.readouterr().err
        assert "fig9z" in err
        for known in FIGURE_IDS:
            assert known in err

    def test_render_api_raises_typed_error(self, tmp_path):
        with pytest.raises(FigureError):
            render(FigureJob(str(tmp_path), "fig3", str(tmp_path / "o.png")))
