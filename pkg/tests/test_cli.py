"""Tests for the command line entry point."""

from __future__ import annotations

import json

import pytest

from klgalois import cli
from klgalois.campaign import VerificationCampaign
from klgalois.const import EXIT_ENGINE_DEFECT, EXIT_OK, EXIT_USAGE, SCHEMA_VERSION
from klgalois.exceptions import EngineDefect


def test_enumerate_prints_json(capsys):
    assert cli.main(["enumerate", "--n", "2", "--level", "1"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["command"] == "enumerate"
    assert len(data["rows"]) == 2


def test_degree_csv(capsys):
    argv = ["degree", "--type", "A1-sc", "--steinberg", "--q", "2", "--bound", "10", "--format", "csv", "-q"]
    assert cli.main(argv) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("root_datum,parameter,torsion,qexp,q,")
    assert "2048/12279" in out[1]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "hecke.json"
    assert cli.main(["hecke-verify", "--type", "A1-sc", "--length-bound", "1", "--output", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["passed"] is True


def test_config_file_with_flag_override(tmp_path, capsys):
    path = tmp_path / "campaign.yaml"
    path.write_text("root_datum: A1-sc\nsteinberg: true\nheight_bound: 4\nq: ['3']\n", encoding="utf-8")
    assert cli.main(["degree", "--config", str(path), "--q", "4"]) == EXIT_OK
    (row,) = json.loads(capsys.readouterr().out)["rows"]
    assert row["q"] == "4"
    assert row["height_bound"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["degree", "--type", "A1-sc"],
        ["degree", "--type", "A1-sc", "--steinberg", "--q", "1"],
        ["enumerate", "--n", "9"],
        ["degree", "--config", "/nonexistent/campaign.yaml"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == EXIT_USAGE
    assert "ERROR" in capsys.readouterr().err


def test_argparse_errors_become_exit_codes(capsys):
    assert cli.main(["prove-everything"]) == EXIT_USAGE
    assert cli.main(["--version"]) == EXIT_OK
    assert "klgalois" in capsys.readouterr().out


def test_engine_defects_have_their_own_exit_code(monkeypatch):
    def broken(self):
        raise EngineDefect("self-check failed")

    monkeypatch.setattr(VerificationCampaign, "run", broken)
    assert cli.main(["enumerate", "--n", "2"]) == EXIT_ENGINE_DEFECT


def test_verbosity_sets_the_level():
    cli.setup_logging(1)
    assert cli._LOGGER.level == 10
    cli.setup_logging(-1)
    assert cli._LOGGER.level == 30
    assert not cli._LOGGER.propagate


def test_oracle_disagreement_exits_with_the_defect_code(monkeypatch, capsys):
    monkeypatch.setattr("klgalois.formal_degree.float_oracle_degree", lambda *args: 123.0)
    argv = ["degree", "--type", "A1-sc", "--steinberg", "--q", "2", "--bound", "10"]
    assert cli.main(argv) == EXIT_ENGINE_DEFECT
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "Engine self-check failed" in captured.err
