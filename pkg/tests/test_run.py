import csv
import io
import json
import os
import sys
import pytest

from fractions import Fraction
from openpyxl import load_workbook
from hkspread import cli, run
from hkspread.exceptions import SpreadError
from hkspread.helpers import Config, get_config
from hkspread.report import Report, to_csv, to_xlsx
from hkspread.run import run_text

RESOURCES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "resources")


def resource(name):
    with open(os.path.join(RESOURCES, name), "r", encoding="utf-8") as f:
        return f.read()


@pytest.fixture(autouse=True)
def fixed_version(monkeypatch):
    monkeypatch.setattr(run, "get_version", lambda: "test")
    monkeypatch.setattr(cli, "get_version", lambda: "test")
    for env in ("HKSPREAD_MAX_GB_STEPS", "HKSPREAD_MAX_BASIS_SIZE", "HKSPREAD_MAX_EXPONENT"):
        monkeypatch.delenv(env, raising=False)


@pytest.mark.parametrize("name", ["parse_error", "spread", "hypersurface", "session"])
def test_golden_reports(name):
    report = run_text(resource(f"{name}.hks"), Config())
    assert report.to_json(timing=False) == resource(f"{name}.json")


def test_report_is_deterministic():
    text = resource("session.hks")
    first = run_text(text).to_json(timing=False)
    second = run_text(text).to_json(timing=False)
    assert first == second
    assert first.endswith("}\n")


def test_timing_is_kept_apart():
    report = run_text(resource("session.hks"))
    data = json.loads(report.to_json())
    assert [t["command"] for t in data["timing"]] == [r["command"] for r in data["results"]]
    assert all(t["seconds"] >= 0 for t in data["timing"])


def test_errors_do_not_stop_the_session():
    text = "char 2; vars x y; ideal J = x; ehk J; length J; identity product m m ell=3 q=2"
    report = run_text(text)
    assert [r["status"] for r in report.results] == ["error", "ok", "failed"]
    assert "not primary to the maximal ideal" in report.results[0]["error"]
    assert report.results[1]["result"] == {"ideal": "J", "length": "infinite", "dimension": 1}
    assert not report.ok


def test_oversized_exponent_is_a_parse_error():
    report = run_text("char 2; vars x y; ideal J = x^70000, y; length J")
    assert report.results == []
    assert report.error["line"] == 1 and report.error["column"] == 31
    assert "exceed the maximum exponent" in report.error["message"]
    assert not report.ok


def test_gb_and_colon_results():
    text = "char 2; vars x y; ideal K = x^2, y^2; ideal J = x*y; gb K; colon K J"
    report = run_text(text)
    assert report.ok
    gb, colon = (r["result"] for r in report.results)
    assert (gb["ideal"], sorted(gb["basis"]), gb["size"]) == ("K", ["x^2", "y^2"], 2)
    assert (colon["ideal"], colon["by"], sorted(colon["colon"])) == ("K", "J", ["x", "y"])


def test_cubic_colon_example():
    report = run_text("char 2; vars x y; ideal C = x^3, x^2*y, x*y^2, y^3; ideal X = x^2; colon C X")
    assert sorted(report.results[0]["result"]["colon"]) == ["x", "y"]


def test_report_round_trip():
    report = run_text(resource("hypersurface.hks"))
    again = Report.from_dict(report.to_dict())
    assert again == report
    value = again.results[0]["result"]["value"]
    assert value == Fraction(1213, 807)


def test_csv():
    report = run_text(resource("spread.hks"))
    rows = list(csv.DictReader(io.StringIO(to_csv(report))))
    assert len(rows) == 4
    assert {row["table"] for row in rows} == {"entries"}
    assert [row["length"] for row in rows] == ["2", "8", "32", "128"]
    assert rows[0]["ratio"] == "2"

    report = run_text(resource("hypersurface.hks"))
    rows = list(csv.DictReader(io.StringIO(to_csv(report))))
    assert [row["table"] for row in rows] == ["samples"] * 4 + ["estimate"]
    assert rows[-1]["value"] == "1213/807"


def test_xlsx(tmp_path):
    path = str(tmp_path / "report.xlsx")
    to_xlsx(run_text(resource("spread.hks")), path)
    wb = load_workbook(path)
    assert wb.sheetnames == ["1 spread J"]
    sheet = wb["1 spread J"]
    assert sheet["A1"].value == "entries"
    assert sheet["A2"].value == "q0"
    assert sheet.freeze_panes == "A3"
    assert sheet.max_row == 6

    to_xlsx(run_text(resource("parse_error.hks")), path)
    wb = load_workbook(path)
    assert wb.sheetnames == ["error"]
    assert wb["error"]["A2"].value == "characteristic must be prime"


def test_get_config(monkeypatch):
    path = os.path.join(RESOURCES, "config.tsv")
    config = get_config(path)
    assert (config.e_max, config.order, config.tolerance) == (2, "lex", 0.01)
    monkeypatch.setenv("HKSPREAD_MAX_EXPONENT", "1000")
    config = get_config(path, order="degrevlex", e_max=None)
    assert (config.max_exponent, config.order, config.e_max) == (1000, "degrevlex", 2)
    with pytest.raises(SpreadError, match="Unknown monomial order"):
        get_config(order="random")


def test_get_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("Key\tValue\nColour\tblue\n")
    with pytest.raises(SpreadError, match="Unknown configuration key 'Colour'"):
        get_config(str(path))


def test_config_order_reaches_the_parser():
    report = run_text("char 2; vars x y; ideal I = x + y^2; gb I", get_config(order="lex"))
    assert report.config["order"] == "lex"
    assert report.results[0]["result"]["basis"] == ["x + y^2"]


def test_cli_run(monkeypatch, tmp_path):
    output = tmp_path / "out.json"
    script = os.path.join(RESOURCES, "spread.hks")
    monkeypatch.setattr(sys, "argv", ["hkspread", "run", script, "-o", str(output)])
    cli.main()
    data = json.loads(output.read_text())
    assert data["results"][0]["result"]["estimate"] == 2
    assert data["version"] == "test"


def test_cli_run_csv_to_stdout(monkeypatch, capsys):
    script = os.path.join(RESOURCES, "spread.hks")
    monkeypatch.setattr(sys, "argv", ["hkspread", "run", script, "-f", "csv"])
    cli.main()
    assert capsys.readouterr().out.startswith("index,command,table,")


@pytest.mark.parametrize(
    "argv",
    [
        ["run", os.path.join(RESOURCES, "parse_error.hks")],
        ["run", os.path.join(RESOURCES, "spread.hks"), "-f", "xlsx"],
        ["run", os.path.join(RESOURCES, "missing.hks")],
        [],
    ],
)
def test_cli_failures_exit_nonzero(monkeypatch, argv):
    monkeypatch.setattr(sys, "argv", ["hkspread"] + argv)
    with pytest.raises(SystemExit) as info:
        cli.main()
    assert info.value.code == 1


def test_cli_rejects_undecodable_scripts(monkeypatch, tmp_path, caplog):
    script = tmp_path / "bad.hks"
    script.write_bytes(b"\xff\xfe\x00char 2")
    monkeypatch.setattr(sys, "argv", ["hkspread", "run", str(script)])
    with pytest.raises(SystemExit) as info:
        cli.main()
    assert info.value.code == 1
    assert "Unable to read script" in caplog.text


def test_cli_version(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["hkspread", "version"])
    cli.main()
    assert capsys.readouterr().out == "hkspread version test\n"
