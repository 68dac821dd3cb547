# tests/test_cli.py
"""Tests for the pybx command line in main.py"""
import json
import pytest
import sys
from pathlib import Path

from click.testing import CliRunner

sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from main import cli


@pytest.fixture(autouse=True)
def quiet_run_log(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "LOG_DIR", tmp_path / "logs")
    monkeypatch.setattr(config, "RUN_LOG_FILE", tmp_path / "logs" / "runs.jsonl")
    monkeypatch.setattr(config, "INCLUDE_TIMING", False)


@pytest.fixture
def runner():
    return CliRunner()


def spec_path(name):
    return str(config.SPECS_DIR / name)


def test_check_passes(runner):
    """Test exit 0 and the human header"""
    result = runner.invoke(cli, ["check", "--in", spec_path("dual_numbers_qrb.pbx")])
    assert result.exit_code == 0
    assert result.stdout.startswith("pybx check: PASS")


def test_check_fails_with_exit_one(runner, write_spec):
    """Test a Jacobi failure gives exit 1"""
    path = write_spec("pybx-spec 1\ndim 3\nbracket\n0 1 0 1\n1 0 0 -1\n0 2 1 1\n2 0 1 -1\n")
    result = runner.invoke(cli, ["check", "--in", str(path), "--format", "machine"])
    assert result.exit_code == 1
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "fail"
    assert payload["checks"][0]["violations"][0]["identity"] == "jacobi"


def test_parse_error_exit_two(runner, write_spec):
    """Test located diagnostics go to stderr with exit 2"""
    path = write_spec("pybx-spec 1\ndim 2\nproduct\n0 0 5 1\n")
    result = runner.invoke(cli, ["check", "--in", str(path)])
    assert result.exit_code == 2
    assert "Index 5 out of range for dimension 2 (line 4, column 5)" in result.stderr
    assert result.stdout == ""


def test_every_diagnostic_is_printed(runner, write_spec):
    """Test multiple diagnostics are listed"""
    path = write_spec("pybx-spec 1\ndim 2\nflags shiny\nproduct\n0 0 x 1\n")
    result = runner.invoke(cli, ["check", "--in", str(path)])
    assert result.exit_code == 2
    assert "line 3, column 7" in result.stderr
    assert "line 5, column 5" in result.stderr


def test_superscript_index_exit_two(runner, write_spec):
    """Test a non-ASCII digit index is a located diagnostic"""
    path = write_spec("pybx-spec 1\ndim 2\nbracket\n² 0 0 1\n")
    result = runner.invoke(cli, ["check", "--in", str(path)])
    assert result.exit_code == 2
    assert "line 4, column 1" in result.stderr
    assert "invalid literal" not in result.stderr


def test_double_past_ceiling_exit_two(runner, write_spec):
    """Test the double of a dimension 9 spec is refused"""
    path = write_spec("pybx-spec 1\ndim 9\nbracket\n")
    result = runner.invoke(cli, ["double", "--in", str(path)])
    assert result.exit_code == 2
    assert "Dimension mismatch" in result.stderr
    assert "validation error" not in result.stderr


def test_missing_input_exit_two(runner):
    """Test classify without r"""
    result = runner.invoke(cli, ["classify", "--in", spec_path("dual_numbers_qrb.pbx")])
    assert result.exit_code == 2
    assert "needs spec field 'r'" in result.stderr


def test_convert_writes_report_and_spec(runner, tmp_path):
    """Test --out and --emit for rb2fact"""
    out, emitted = tmp_path / "report.json", tmp_path / "out.pbx"
    result = runner.invoke(cli, [
        "convert", "--in", spec_path("dual_numbers_qrb.pbx"), "--direction", "rb2fact",
        "--format", "machine", "--out", str(out), "--emit", str(emitted),
    ])
    assert result.exit_code == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["classification"]["label"] == "Factorizable"
    assert emitted.read_text(encoding="utf-8") == payload["emitted_spec"]
    assert "\nr\n1 0 1\n" in payload["emitted_spec"]


def test_convert_requires_direction(runner):
    """Test click rejects a missing direction"""
    result = runner.invoke(cli, ["convert", "--in", spec_path("dual_numbers_qrb.pbx")])
    assert result.exit_code == 2


def test_weight_override(runner):
    """Test --weight 0 is refused for fact2rb"""
    result = runner.invoke(cli, [
        "convert", "--in", spec_path("dual_numbers_factorizable.pbx"),
        "--direction", "fact2rb", "--weight", "0",
    ])
    assert result.exit_code == 2
    assert "Weight must be nonzero" in result.stderr


def test_emit_ignored_for_check(runner, tmp_path):
    """Test --emit warns when nothing is emitted"""
    target = tmp_path / "never.pbx"
    result = runner.invoke(cli, ["check", "--in", spec_path("p2_zero_bialgebra.pbx"), "--emit", str(target)])
    assert result.exit_code == 0
    assert "--emit ignored" in result.stderr
    assert not target.exists()


def test_induce_and_double(runner):
    """Test the differential commands end to end"""
    induced = runner.invoke(cli, ["induce", "--in", spec_path("euler_xy_square_zero.pbx"), "--format", "machine"])
    assert induced.exit_code == 0
    assert json.loads(induced.stdout)["classification"]["label"] == "Triangular"
    doubled = runner.invoke(cli, ["double", "--in", spec_path("p2_zero_bialgebra.pbx"), "--format", "machine"])
    assert json.loads(doubled.stdout)["classification"]["label"] == "Factorizable"


def test_machine_output_is_reproducible(runner):
    """Test two runs on the same input are byte-identical"""
    args = ["classify", "--in", spec_path("dual_numbers_factorizable.pbx"), "--format", "machine"]
    first, second = runner.invoke(cli, args), runner.invoke(cli, args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    digest = json.loads(first.stdout)["input_digest"]
    assert len(digest) == 64


def test_report_rerenders_saved_json(runner, tmp_path):
    """Test report on a saved machine report"""
    saved = tmp_path / "saved.json"
    runner.invoke(cli, ["report", "--in", spec_path("dual_numbers_factorizable.pbx"),
                        "--format", "machine", "--out", str(saved)])
    result = runner.invoke(cli, ["report", "--in", str(saved)])
    assert result.exit_code == 0
    assert result.stdout.startswith("pybx report: PASS")
    assert "label Factorizable" in result.stdout


def test_run_log_records_commands(runner):
    """Test load, command and emit events are written"""
    runner.invoke(cli, ["check", "--in", spec_path("p2_zero_bialgebra.pbx")])
    lines = config.RUN_LOG_FILE.read_text(encoding="utf-8").splitlines()
    assert [json.loads(line)["event_type"] for line in lines] == ["load", "command", "emit"]
