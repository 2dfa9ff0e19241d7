import json

import numpy as np
import pandas as pd
import pytest

from robust3s.cli import ArgumentsParser, Command
from robust3s.errors import UsageError
from robust3s.main import main
from robust3s.services import OutputFormat


@pytest.fixture
def line_csv(tmp_path):
    x = np.arange(1.0, 21.0)
    path = tmp_path / "line.csv"
    pd.DataFrame({"y": 2.0 * x, "x": x}).to_csv(path, index=False)
    return path


@pytest.fixture
def noisy_csv(tmp_path):
    rng = np.random.default_rng(3)
    X = rng.standard_normal((120, 2))
    y = 1.0 + X @ [2.0, -1.0] + 0.3 * rng.standard_normal(120)
    path = tmp_path / "noisy.csv"
    pd.DataFrame({"y": y, "x1": X[:, 0], "x2": X[:, 1]}).to_csv(path, index=False)
    return path


@pytest.fixture
def spiked_csv(tmp_path):
    a = np.arange(1.0, 201.0)
    a[0] = 1e6
    path = tmp_path / "spiked.csv"
    pd.DataFrame({"y": np.arange(200.0) % 7, "a": a, "b": np.arange(200.0, 0.0, -1.0)}).to_csv(path, index=False)
    return path


def test_fit_exact_line(line_csv, capsys):
    code = main(["fit", "--input", str(line_csv), "--response", "y", "--method", "ls", "--seed", "1", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    slope = payload["coefficients"][1]
    assert slope["term"] == "x"
    assert slope["estimate"] == pytest.approx(2.0, abs=1e-10)
    assert slope["p_value"] < 1e-6
    assert payload["meta"]["seed"] == 1


def test_fit_same_seed_same_output(noisy_csv, tmp_path):
    outputs = []
    for name in ("first.tsv", "second.tsv"):
        out = tmp_path / name
        argv = ["fit", "--input", str(noisy_csv), "--response", "y", "--method", "3s,ls", "--seed", "42"]
        assert main(argv + ["--format", "tsv", "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert b"## squared norm distances" in outputs[0]


def test_fit_without_seed_echoes_it(noisy_csv, capsys):
    assert main(["fit", "--input", str(noisy_csv), "--response", "y", "--method", "ls"]) == 0
    header = [line for line in capsys.readouterr().out.splitlines() if line.startswith("# seed: ")]
    assert len(header) == 1
    assert int(header[0].split(": ")[1]) >= 0


def test_alternating_requires_dummies(noisy_csv, capsys):
    code = main(["fit", "--input", str(noisy_csv), "--response", "y", "--method", "alternating"])
    assert code == 2
    assert "dummy" in capsys.readouterr().err


def test_empty_input_exit_code(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    path.write_text("y,x\n", encoding="utf-8")
    assert main(["fit", "--input", str(path), "--response", "y"]) == 3
    assert "empty sample" in capsys.readouterr().err


def test_bad_options(line_csv):
    assert main(["fit", "--input", str(line_csv), "--response", "y", "--method", "mm"]) == 2
    assert main(["fit", "--input", str(line_csv), "--response", "y", "--alpha", "0.7"]) == 2
    assert main(["fit", "--input", str(line_csv)]) == 2
    assert main(["simulate", "--scenario", "bogus"]) == 2
    assert main(["nothing"]) == 2


def test_filter_command(spiked_csv, tmp_path, capsys):
    out = tmp_path / "clean.csv"
    assert main(["filter", "--input", str(spiked_csv), "--response", "y", "--out", str(out)]) == 0
    assert "## flagged cells" in capsys.readouterr().out
    filtered = pd.read_csv(out)
    assert np.isnan(filtered.loc[0, "a"])
    assert filtered["a"].isna().sum() == 1
    assert filtered["b"].notna().all()
    assert filtered["y"].notna().all()
    tails = pd.read_csv(tmp_path / "clean.tails.tsv", sep="\t")
    assert list(tails["variable"]) == ["a", "b"]


def test_filter_default_output(spiked_csv):
    assert main(["filter", "--input", str(spiked_csv), "--response", "y"]) == 0
    assert (spiked_csv.parent / "spiked.filtered.csv").exists()
    assert (spiked_csv.parent / "spiked.filtered.tails.tsv").exists()


def test_simulate_small_grid(tmp_path, monkeypatch):
    monkeypatch.setenv("ROBUST3S_THREADS", "1")
    out = tmp_path / "sim.json"
    plot = tmp_path / "plot.tsv"
    argv = [
        "simulate", "--scenario", "clean,casewise", "--epsilon", "0.1", "--k-grid", "2:4:2",
        "--n", "60", "--p", "3", "--replicates", "2", "--estimators", "ls,oracle",
        "--seed", "5", "--format", "json", "--out", str(out), "--plot-data", str(plot),
    ]
    assert main(argv) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert len(payload["summary"]) == 6
    assert {row["scenario"] for row in payload["summary"]} == {"clean", "casewise"}
    assert len(payload["scenarios"]) == 3
    assert set(pd.read_csv(plot, sep="\t")["metric"]) == {"mse", "cr", "cil"}


def test_config_file_precedence(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("# defaults\nreplicates = 7\np = 4\nk = 1:3\n", encoding="utf-8")
    cfg = ArgumentsParser().parse(["simulate", "--config", str(config), "--p", "6", "--seed", "0"])
    assert cfg.command == Command.SIMULATE
    assert cfg.replicates == 7
    assert cfg.p == 6
    assert cfg.k_grid == (1.0, 2.0, 3.0)


def test_config_file_unknown_key(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("bogus=1\n", encoding="utf-8")
    with pytest.raises(UsageError, match="unknown key"):
        ArgumentsParser().parse(["simulate", "--config", str(config)])


def test_parse_fit_options():
    cfg = ArgumentsParser().parse(
        ["fit", "--input", "d.csv", "--response", "y", "--method", "3S,2s", "--dummies", "auto", "--seed", "3", "--format", "tsv"]
    )
    assert cfg.methods == ("3s", "2s")
    assert cfg.dummies == "auto"
    assert cfg.fmt == OutputFormat.TSV
    assert not cfg.seed_generated
    with pytest.raises(UsageError):
        ArgumentsParser().parse(["fit", "--input", "d.csv", "--response", "y", "--method", "alternating,ls"])
