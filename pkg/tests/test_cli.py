import csv
import json

import pytest

from conftest import preset
from src.config import settings
from src.kpartite import __version__
from src.kpartite.cli import dump_run_config, main


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path)])


def report(tmp_path, command):
    return json.loads((tmp_path / command / "report.json").read_text(encoding="utf-8"))


def read_csv(path):
    with path.open(encoding="utf-8") as fh:
        return list(csv.reader(fh))


def write_config(tmp_path, cfg, name="run.md"):
    path = tmp_path / name
    path.write_text(dump_run_config(cfg), encoding="utf-8")
    return path


def test_classify_report(tmp_path):
    assert run(tmp_path, "classify", "--preset", "case2bsss") == 0
    envelope = report(tmp_path, "classify")
    assert envelope["command"] == "classify"
    assert envelope["tool_version"] == __version__
    assert envelope["seed"] == 0
    assert envelope["outputs"]["scenario"] == "2b***"
    assert envelope["outputs"]["alpha"] == "5/11"
    assert envelope["config"]["components"][2]["exponent"] == "7/8"


def test_mean_report(tmp_path):
    assert run(tmp_path, "mean", "--preset", "case3", "--nu", "1000") == 0
    outputs = report(tmp_path, "mean")["outputs"]
    assert outputs["exact"] == pytest.approx(outputs["oracle"], rel=1e-8)
    assert outputs["asymptotic_mean"] == {"coefficient": "1/3", "exponent": "2"}
    assert 0.9 < outputs["ratio"] < 1.1


def test_law_csv(tmp_path):
    assert run(tmp_path, "law", "--preset", "case3") == 0
    rows = read_csv(tmp_path / "law" / "law.csv")
    assert rows[0] == ["x", "pdf", "cdf"]
    assert len(rows) == settings.LAW_GRID_POINTS + 1
    assert float(rows[1][2]) == 0.0
    assert float(rows[-1][2]) == pytest.approx(0.999, abs=1e-6)


def test_simulate_outputs_and_determinism(tmp_path):
    args = ("simulate", "--preset", "case2bsss", "--reps", "2000", "--seed", "5")
    assert run(tmp_path / "a", *args) == 0
    assert run(tmp_path / "b", *args) == 0

    first = (tmp_path / "a" / "simulate" / "samples.csv").read_bytes()
    assert first == (tmp_path / "b" / "simulate" / "samples.csv").read_bytes()

    outputs = report(tmp_path / "a", "simulate")["outputs"]
    assert outputs["replications"] == 2000
    assert outputs["censored"] == 0
    assert outputs["scenario"] == "2b***"
    assert outputs["ks_threshold"] == 0.05
    assert outputs["ks_floor"] == 0.0
    assert set(outputs["occupancy_fractions"]) == {"1", "2"}
    assert read_csv(tmp_path / "a" / "simulate" / "histogram.csv")[0] == ["left", "right", "density"]


def test_simulate_skips_atom(tmp_path):
    assert run(tmp_path, "simulate", "--preset", "case1b", "--reps", "2000") == 0
    outputs = report(tmp_path, "simulate")["outputs"]
    assert outputs["scenario"] == "1b*"
    assert 0 < outputs["ks_floor"] < 1
    assert outputs["ks"] <= outputs["ks_threshold"]


def test_starve_table(tmp_path):
    assert run(tmp_path, "starve", "--preset", "case3", "--reps", "2000") == 0
    rows = read_csv(tmp_path / "starve" / "table.csv")
    assert rows[0][:3] == ["omega", "t", "probability"]
    assert [float(row[0]) for row in rows[1:]] == [0.25, 0.5, 1.0, 2.0]


def test_mix_table(tmp_path):
    cfg = preset("case3").model_copy(update={"nu_grid": [10.0, 100.0, 1000.0]})
    assert run(tmp_path, "mix", "--config", str(write_config(tmp_path, cfg))) == 0
    outputs = report(tmp_path, "mix")["outputs"]
    assert outputs["kappa"] == 1
    assert outputs["label"] == "branch-certified"
    rows = read_csv(tmp_path / "mix" / "table.csv")
    assert len(rows) == 4
    ratios = [float(row[4]) for row in rows[1:]]
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)


def test_same_branch_exit_code(tmp_path):
    cfg = preset("case3").model_copy(update={"target": (1, 2)})
    assert run(tmp_path, "classify", "--config", str(write_config(tmp_path, cfg))) == 2


def test_unknown_key_exit_code(tmp_path):
    path = tmp_path / "bad.md"
    path.write_text(
        "---\ncomponents:\n  - size: 2\n    exponent: \"1\"\n  - size: 2\n    exponent: \"1\"\n"
        "source: [1, 2]\ntarget: [2, 2]\nbogus: 1\n---\n",
        encoding="utf-8",
    )
    assert run(tmp_path, "classify", "--config", str(path)) == 2


def test_missing_config_exit_code(tmp_path):
    assert run(tmp_path, "classify", "--config", str(tmp_path / "absent.md")) == 2
    assert run(tmp_path, "classify") == 2


def test_default_output_dir(output_dir):
    assert main(["classify", "--preset", "case3"]) == 0
    assert (output_dir / "classify" / "report.json").is_file()
