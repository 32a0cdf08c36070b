import io
import json

import numpy as np
import pytest
from pytest import raises

from slitwalk.cli import build_parser, load_config, main
from slitwalk.experiments import PRESETS

SMALL = """
[walk] coin=hadamard steps=10 name=small
[barrier] x=4 slit=0,1
[screen] x=8
"""


def test_presets_verb():
    out = io.StringIO()
    assert main(["presets"], out=out) == 0
    lines = out.getvalue().splitlines()
    assert len(lines) == len(PRESETS)
    assert lines[0].startswith("fig2 ")


def test_run_config(tmpdir):
    cfg = tmpdir / "small.cfg"
    cfg.write(SMALL)
    target = tmpdir / "out"
    out = io.StringIO()
    code = main(["-v", "run", "--config", str(cfg), "--out", str(target)], out=out)
    assert code == 0
    assert "transmitted fraction" in out.getvalue()
    for name in ["field.csv", "screen.csv", "extrema.json", "manifest.json"]:
        assert (target / name).exists()


@pytest.mark.figure
def test_run_free_hadamard_preset(tmpdir):
    target = tmpdir / "free"
    assert main(["run", "--preset", "free_hadamard", "--out", str(target)], out=io.StringIO()) == 0
    rows = np.loadtxt(str(target / "field.csv"), delimiter=",", skiprows=1)
    nonzero = rows[rows[:, 2] > 0]
    assert len(nonzero) > 0
    assert np.all(nonzero[:, 0] % 2 == 0)
    assert np.all(nonzero[:, 1] % 2 == 0)


@pytest.mark.figure
def test_run_fig4_preset_reports_fringes(tmpdir):
    target = tmpdir / "fig4"
    assert main(["run", "--preset", "fig4", "--out", str(target)], out=io.StringIO()) == 0
    summary = json.loads((target / "extrema.json").read())
    assert [m["row"] for m in summary["maxima"]] == [-42, -36, -24, 0, 24, 36, 42]
    assert summary["central"] == {"row": 0, "axis": 0}
    assert summary["valley_ratio"] <= 0.1
    screen = np.loadtxt(str(target / "screen.csv"), delimiter=",", skiprows=1)
    assert screen.shape[1] == 2


def test_output_flags_override_config(tmpdir):
    cfg = tmpdir / "small.cfg"
    cfg.write(SMALL + "[output] eps=0.5 directory=elsewhere\n")
    args = build_parser().parse_args(
        ["run", "--config", str(cfg), "--out", "here", "--filter-nonzero", "--threshold", "0.2"]
    )
    config = load_config(args)
    assert config.outputs.directory == "here"
    assert config.outputs.filter_nonzero
    assert config.outputs.eps == 0.5
    assert config.outputs.threshold == 0.2


def test_config_errors_exit_1(tmpdir, capsys):
    assert main(["run", "--config", str(tmpdir / "missing.cfg")]) == 1
    assert "missing.cfg" in capsys.readouterr().err

    bad = tmpdir / "bad.cfg"
    bad.write("[walk] coin=hadamar steps=3\n")
    assert main(["run", "--config", str(bad)]) == 1
    assert "hadamar" in capsys.readouterr().err

    assert main(["run", "--preset", "nope"]) == 1
    assert main(["run", "--preset", "fig2", "--threshold", "2"]) == 1


def test_runtime_errors_exit_2(tmpdir, capsys):
    blocker = tmpdir / "blocker"
    blocker.write("")
    cfg = tmpdir / "small.cfg"
    cfg.write(SMALL)
    assert main(["run", "--config", str(cfg), "--out", str(blocker / "out")]) == 2
    assert "could not write" in capsys.readouterr().err


def test_validate(tmpdir, capsys):
    folder = tmpdir.mkdir("configs")
    folder.join("a.cfg").write(SMALL)
    folder.mkdir("nested").join("b.cfg").write("[walk] coin=grover steps=5\n")
    folder.join("notes.txt").write("ignored")

    out = io.StringIO()
    assert main(["validate", str(folder)], out=out) == 0
    assert "2 config file(s) valid" in out.getvalue()

    out = io.StringIO()
    assert main(["validate", str(folder.join("a.cfg"))], out=out) == 0
    assert "valid (small)" in out.getvalue()

    folder.join("c.cfg").write("[walk] coin=grover\n")
    assert main(["validate", str(folder)], out=io.StringIO()) == 1
    assert "c.cfg" in capsys.readouterr().err


def test_usage_errors():
    with raises(SystemExit):
        main(["run"])
    with raises(SystemExit):
        main(["run", "--preset", "fig2", "--config", "x.cfg"])
    with raises(SystemExit):
        main(["run", "--preset", "fig2", "--format", "png"])
