import csv
import json
import os

import pytest

from dirichletlib.cli import main
from dirichletlib.engine.errors import ConfigError, InvalidArgument
from tests.enablelog import banner

CONFIGS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "configs")


def config(name):
    return os.path.join(CONFIGS, name)


def test_catalog(capsys):
    banner("command line")
    assert main(["catalog"]) == 0
    names = [entry["name"] for entry in json.loads(capsys.readouterr().out)]
    assert "1+2^-s" in names
    assert "zeta" in names


def test_count_appends_a_row(tmp_path, capsys):
    out = str(tmp_path)
    assert main(["count", "--fn", config("one_plus_2pow.json"), "--r", "50", "--out", out]) == 0
    assert capsys.readouterr().out.strip() == "12"
    assert main(["count", "--fn", config("one_plus_2pow.json"), "--r", "20", "--out", out]) == 0
    with open(os.path.join(out, "count.csv"), newline="") as stream:
        rows = list(csv.reader(stream))
    assert rows[0] == ["r", "n_zero", "n_pole", "N_zero", "N_pole", "ratio"]
    assert [row[1] for row in rows[1:]] == ["12", "4"]
    assert os.path.exists(os.path.join(out, "manifest.json"))


def test_count_of_poles(tmp_path, capsys):
    assert main(["count", "--fn", config("geometric.json"), "--r", "20", "--a", "inf", "--out",
                 str(tmp_path)]) == 0
    assert capsys.readouterr().out.strip() == "7"


def test_table_with_output_directory(tmp_path):
    out = str(tmp_path)
    assert main(["table", "--fn", config("one_plus_2pow.json"), "--grid", "5:50:8log", "--out", out]) == 0
    with open(os.path.join(out, "table.csv"), newline="") as stream:
        rows = list(csv.reader(stream))
    assert len(rows) == 9
    assert rows[-1][1] == "12"
    with open(os.path.join(out, "manifest.json")) as stream:
        manifest = json.load(stream)
    assert manifest["command"] == "table"
    assert manifest["exit_code"] == 0
    assert manifest["seed"] == 0
    assert os.path.join(out, "table.csv") in manifest["outputs"]


def test_product(capsys):
    assert main(["product", "--zeros", "10", "--s", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["holds"]
    assert data["rhs"] == pytest.approx(0.0539, abs=1e-4)


def test_symdiff_of_the_pair(capsys):
    assert main(["symdiff", "--F", config("F45.json"), "--G", config("G9.json"), "--T", "20"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["D"] == [22]
    assert data["verdict"] is None


def test_jensen(capsys):
    assert main(["jensen", "--fn", config("one_minus_exp.json"), "--r", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["residual"] < 1e-7


def test_usage_errors(tmp_path):
    assert main(["count", "--fn", config("one_plus_2pow.json"), "--r", "5", "--tol", "0"]) == 2
    assert main(["count", "--fn", str(tmp_path / "missing.json"), "--r", "5"]) == 2
    assert main(["count", "--fn", config("one_plus_2pow.json")]) == 2
    assert main(["count", "--fn", config("one_plus_2pow.json"), "--r", "5:50:8log"]) == 2
    assert main(["nosuchcommand"]) == 2


def test_failed_check_exits_with_one(capsys):
    assert main(["lambda", "--fn", config("one_minus_exp.json"), "--tau", "0.1"]) == 1
    assert main(["lambda", "--fn", config("one_plus_2pow.json"), "--tau", "0.1"]) == 0


def test_rejected_command_line_still_writes_a_manifest(tmp_path):
    out = str(tmp_path / "rejected")
    assert main(["count", "--fn", config("one_plus_2pow.json"), "--r", "5", "--bogus", "--out", out]) == 2
    with open(os.path.join(out, "manifest.json")) as stream:
        manifest = json.load(stream)
    assert manifest["command"] == "count"
    assert manifest["exit_code"] == 2
    assert "--bogus" in manifest["config"]["argv"]


def test_manifest_echoes_the_tolerances(tmp_path):
    out = str(tmp_path)
    assert main(["symdiff", "--F", config("F45.json"), "--G", config("G9.json"), "--T", "20", "--out", out]) == 0
    with open(os.path.join(out, "manifest.json")) as stream:
        tolerances = json.load(stream)["config"]["tolerances"]
    assert tolerances["theta"] == 0.05
    assert tolerances["theta_prime"] == 0.01
    assert tolerances["limit_tol"] == 1e-8
    assert tolerances["agreement_tol"] == 1e-8
    assert tolerances["match_tol"] == 1e-6


def test_count_without_out_only_prints(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["count", "--fn", config("one_plus_2pow.json"), "--r", "10"]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert not os.path.exists(tmp_path / "count.csv")


def test_error_messages():
    error = ConfigError(" --tol ", " must be positive ")
    assert error.field == "--tol"
    assert str(error) == 'The field " --tol " gave the error " must be positive ".'
    assert repr(InvalidArgument("radius must be positive\n")) == "InvalidArgument: radius must be positive"
