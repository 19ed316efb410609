"""
End-to-end tests for the batch CLI: rendering, exit statuses and the report files.
"""
import csv
import io
import json

import pytest
from pydantic import ValidationError

from app.core.config import Settings
from app.linear.schemas import TABLE_COLUMNS
from app.main import EXIT_ERROR, EXIT_OK, build_parser


class TestBroadCommand:
    def test_text_output(self, cli):
        result = cli("broad", "5", "3")
        assert result.status == EXIT_OK
        assert result.stdout == "p = 2 + 63/100\n"

    def test_csv_output_uses_integer_columns(self, cli):
        result = cli("--format", "csv", "broad", "5", "3")
        assert result.status == EXIT_OK
        assert result.stdout == "n,k,p_num,p_den,closed_forms_agree,boundary\n5,3,263,100,true,false\n"

    def test_json_output_carries_fraction_strings(self, cli):
        payload = json.loads(cli("--format", "json", "broad", "5", "3").stdout)
        assert payload["p"] == "263/100"
        assert payload["product"] == "16/21"
        assert payload["closed_forms_agree"] is True

    def test_output_file(self, cli, tmp_path):
        target = tmp_path / "broad.txt"
        result = cli("--output", str(target), "broad", "5", "3")
        assert result.status == EXIT_OK
        assert result.stdout == ""
        assert target.read_text(encoding="utf-8") == "p = 2 + 63/100\n"

    def test_domain_error_exits_with_one(self, cli):
        result = cli("broad", "4", "5")
        assert result.status == EXIT_ERROR
        assert "error:" in result.stderr
        assert result.stdout == ""


class TestUsage:
    @pytest.mark.parametrize("argv", [(), ("broad", "5"), ("broad", "five", "3"), ("unknown",)])
    def test_usage_errors_exit_with_one(self, cli, argv):
        result = cli(*argv)
        assert result.status == EXIT_ERROR
        assert "usage:" in result.stderr

    def test_every_command_is_registered(self):
        parser = build_parser()
        subparsers = next(a for a in parser._actions if a.dest == "command")
        assert set(subparsers.choices) == {
            "broad", "bounds", "linear", "table", "verify-params", "sweep-params",
            "cubic", "asymptotic", "exponent-bounds", "wolff", "extremal",
        }


def test_bounds_sweep(cli):
    result = cli("bounds", "--n-max", "20", "--i-max", "100")
    assert result.status == EXIT_OK
    assert result.stdout.count(": ok") == 2


def test_linear(cli):
    assert cli("linear", "5").stdout == "p = 2 + 63/100 (k_opt = 3)\n"


def test_linear_candidates_csv(cli):
    rows = list(csv.DictReader(io.StringIO(cli("--format", "csv", "linear", "5", "--candidates").stdout)))
    assert [row["k"] for row in rows] == ["2", "3", "4", "5"]
    assert rows[1]["p_broad"] == "263/100"


def test_table_csv(cli):
    result = cli("--format", "csv", "table", "5", "7")
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert result.status == EXIT_OK
    assert [row["n"] for row in rows] == ["5", "6", "7"]
    assert rows[0]["new_num"] == "263" and rows[0]["new_den"] == "100"
    assert rows[1]["winner"] == "prior"


def test_table_text_reports_boundary_optima(cli):
    result = cli("table", "3", "19")
    lines = result.stdout.splitlines()
    assert result.status == EXIT_OK
    assert lines[0].startswith("n = 3: new ")
    assert lines[-1] == "k = n optimal at: none"


def test_table_json_matches_csv_columns(cli):
    result = cli("--format", "json", "table", "5", "8")
    records = json.loads(result.stdout)
    assert result.status == EXIT_OK
    assert [record["n"] for record in records] == [5, 6, 7, 8]
    for record in records:
        assert list(record) == TABLE_COLUMNS
        assert record["winner"] in ("new", "prior")
        for key in TABLE_COLUMNS:
            if key != "winner":
                assert record[key] is None or isinstance(record[key], (bool, int)), key
    assert records[0]["new_num"] == 263 and records[0]["new_den"] == 100
    assert records[0]["prior_num"] is None


def test_verify_params_numeric(cli):
    result = cli("verify-params", "5", "2")
    assert result.status == EXIT_OK
    assert "all residuals vanish under the reciprocal convention" in result.stdout
    assert "p_0 = 263/100 (closed form matches)" in result.stdout


def test_verify_params_symbolic(cli):
    result = cli("verify-params", "--symbolic", "1")
    assert result.status == EXIT_OK
    assert "validity domain n > 2: 0 denominator roots inside" in result.stdout


@pytest.mark.parametrize("argv", [("verify-params", "5"), ("verify-params", "--symbolic", "2", "3")])
def test_verify_params_arity(cli, argv):
    assert cli(*argv).status == EXIT_ERROR


def test_sweep_params(cli):
    result = cli("sweep-params", "--n-max", "10")
    assert result.status == EXIT_OK
    assert result.stdout == f"{sum(k - 1 for k in range(2, 11))} pairs checked, 0 failures\n"


def test_cubic(cli):
    result = cli("cubic", "--precision", "32")
    assert result.status == EXIT_OK
    assert "lambda in [" in result.stdout
    assert "cardano agrees: True" in result.stdout
    assert "lambda vs Hickman-Rogers (2.604...): below" in result.stdout


def test_asymptotic_json_keeps_precision(cli):
    result = cli("--format", "json", "asymptotic", "--n-max", "20")
    payload = json.loads(result.stdout)
    assert result.status == EXIT_OK
    assert [row["n"] for row in payload["rows"]] == [3, 5, 10, 20]
    assert payload["lam"]["precision"] >= 64
    assert [entry["label"] for entry in payload["registry"]][0] == "Tomas"
    assert payload["registry"][2]["value"] == "8/3"


def test_exponent_bounds(cli):
    result = cli("exponent-bounds", "5", "3")
    assert result.status == EXIT_OK
    assert "p = 263/100" in result.stdout
    assert "certified: True" in result.stdout


class TestWolffCommands:
    def test_trial_suite_from_config(self, cli, tmp_path, small_trial_config):
        config = tmp_path / "trials.json"
        config.write_text(json.dumps(small_trial_config), encoding="utf-8")
        reports = tmp_path / "reports.jsonl"

        result = cli("wolff", "--config", str(config), "--output", str(reports))
        assert result.status == EXIT_OK
        lines = result.stdout.splitlines()
        assert [line.split(":")[0] for line in lines[:-1]] == ["seed 0", "seed 1", "seed 2"]
        assert "/3 trials with nonzero count, 0 violations" in lines[-1]
        assert "(float64)" in lines[-1]
        assert "VIOLATED" not in result.stdout
        written = [json.loads(line) for line in reports.read_text(encoding="utf-8").splitlines()]
        assert len(written) == 3
        assert all(report["float_format"] == "float64" for report in written)

    def test_trial_suite_csv(self, cli, tmp_path, small_trial_config):
        config = tmp_path / "trials.json"
        config.write_text(json.dumps(small_trial_config), encoding="utf-8")
        rows = list(csv.DictReader(io.StringIO(cli("--format", "csv", "wolff", "--config", str(config)).stdout)))
        assert [row["seed"] for row in rows] == ["0", "1", "2"]
        assert all(row["violated"] == "false" for row in rows)
        assert all(row["float_format"] == "float64" for row in rows)
        assert all(float(row["relative_guard"]) == 1e-9 for row in rows)

    def test_missing_config(self, cli, tmp_path):
        result = cli("wolff", "--config", str(tmp_path / "absent.json"))
        assert result.status == EXIT_ERROR
        assert "config file not found" in result.stderr

    def test_invalid_config(self, cli, tmp_path):
        config = tmp_path / "bad.json"
        config.write_text(json.dumps({"n": 3, "m": 5, "R": 100.0}), encoding="utf-8")
        assert cli("wolff", "--config", str(config)).status == EXIT_ERROR

    def test_extremal(self, cli):
        result = cli("extremal", "3", "2", "10000")
        assert result.status == EXIT_OK
        assert "with full occupancy" in result.stdout


def test_metrics_textfile(cli, tmp_path, override_settings):
    target = tmp_path / "metrics.prom"
    override_settings(METRICS_TEXTFILE=str(target))
    cli("broad", "5", "3")
    content = target.read_text(encoding="utf-8")
    assert 'restriction_commands_total{command="broad",status="ok"}' in content


def test_configuration_surface():
    """Every setting is read by some command or guard."""
    assert set(Settings.model_fields) == {
        "APP_NAME", "VERSION", "LOG_LEVEL",
        "DEFAULT_PRECISION_BITS", "MAX_PRECISION_BITS",
        "SYMBOLIC_MAX_M", "SYMBOLIC_DEGREE_CAP",
        "ASYMPTOTIC_N_CAP",
        "LATTICE_POINT_CAP", "TRIAL_MAX_DIMENSION", "TRIAL_MAX_SCALE", "TRIAL_MAX_BUDGET",
        "WOLFF_CONSTANT", "WOLFF_EPSILON", "OCCUPANCY_RELATIVE_GUARD", "SUITE_WORKERS",
        "METRICS_TEXTFILE",
    }


def test_inconsistent_precision_limits_are_refused():
    with pytest.raises(ValidationError):
        Settings(DEFAULT_PRECISION_BITS=8192, MAX_PRECISION_BITS=4096)
