from __future__ import annotations

import csv
import io
import json
import math

import pytest

from riemann_pcf.cli import EXIT_DATA, EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, main


@pytest.fixture(scope="module")
def zero_file(tmp_path_factory, zeros100):
    path = tmp_path_factory.mktemp("zeros") / "zeros.txt"
    path.write_text("# first hundred ordinates\n" + zeros100.to_text(), encoding="utf-8")
    return path


def test_pi_table_with_hundred_zeros(zero_file, capsys):
    code = main(["pi-table", "--x", "10.5,100.5", "--zeros", f"file:{zero_file}", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert code == EXIT_OK
    assert [r["x"] for r in rows] == ["10.5", "100.5"]
    assert all(float(r["abs_diff"]) < 0.35 for r in rows)
    assert set(rows[0]) == {"x", "F_analytic", "pi_sieve", "abs_diff", "f_riemann", "f_residue",
                            "zeros_used"}


def test_pi_table_with_few_zeros_reports_breach(capsys):
    # the 13 zeros below 60 leave F(100.5) about 0.41 away from 25
    code = main(["pi-table", "--x", "10.5,100.5", "--zeros", "compute:60", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_TOLERANCE
    assert doc["rows"][0]["abs_diff"] < 0.35
    assert doc["rows"][1]["abs_diff"] > 0.35
    assert doc["breakdowns"][0]["riemann"]["zeros_used"] == 13


def test_pi_table_empty_x_is_usage_error(capsys):
    assert main(["pi-table", "--x", ""]) == EXIT_USAGE


def test_missing_arguments_are_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["pi-table"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE


def test_bad_zero_source(capsys):
    assert main(["verify", "--x", "5", "--zeros", "web:foo"]) == EXIT_USAGE
    assert main(["verify", "--x", "5", "--zeros", "compute:900"]) == EXIT_USAGE


def test_verify_passes(capsys):
    code = main(["verify", "--x", "5", "--zeros", "compute:30", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert all(r["pass"] for r in doc["rows"])


def test_verify_near_one_relaxed(capsys):
    code = main(["verify", "--x", "1.0001", "--zeros", "compute:30", "--tolerance", "1e-6"])
    assert code == EXIT_OK


def test_verify_rejects_x_at_most_one(capsys):
    assert main(["verify", "--x", "1.0"]) == EXIT_USAGE


def test_env_var_supplies_zero_table(zero_file, monkeypatch, capsys):
    monkeypatch.setenv("RIEMANN_ZEROS_FILE", str(zero_file))
    code = main(["pi-table", "--x", "30.5", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["rows"][0]["zeros_used"] == 100


def test_json_output_round_trips(zero_file, tmp_path, capsys):
    out = tmp_path / "table.json"
    main(["pi-table", "--x", "20.5", "--zeros", f"file:{zero_file}", "--format", "json",
          "--output", str(out)])
    doc = json.loads(out.read_text())
    assert json.loads(json.dumps(doc)) == doc


def test_output_is_deterministic(zero_file, capsys):
    args = ["pi-table", "--x", "15.5,40.5", "--zeros", f"file:{zero_file}", "--format", "csv"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def _footer_values(text):
    return [float(line.rsplit("=", 1)[1].split()[0]) for line in text.splitlines() if line.startswith("#")]


def test_branch_trace_real_axis(capsys):
    code = main(["branch-trace", "--kind", "real", "--offset", "0.01", "--samples", "5"])
    text = capsys.readouterr().out
    assert code == EXIT_OK
    assert text.splitlines()[0] == "sigma,t,re_log,im_log"
    rows = [line for line in text.splitlines()[1:] if not line.startswith("#")]
    assert len(rows) == 10
    assert _footer_values(text)[0] == pytest.approx(2 * math.pi, abs=1e-3)


def test_branch_trace_critical_cut(capsys):
    code = main(["branch-trace", "--kind", "critical", "--zeros", "compute:30", "--sigma-min", "-1",
                 "--samples", "3"])
    assert code == EXIT_OK
    assert _footer_values(capsys.readouterr().out)[0] == pytest.approx(-2 * math.pi, abs=1e-3)


def test_branch_trace_rogue(capsys):
    code = main(["branch-trace", "--kind", "rogue", "--samples", "3"])
    left, between = _footer_values(capsys.readouterr().out)
    assert code == EXIT_OK
    assert left == pytest.approx(4 * math.pi, abs=1e-3)
    assert between == pytest.approx(2 * math.pi, abs=1e-3)


def test_zeros_find_and_check(tmp_path, capsys):
    out = tmp_path / "z.txt"
    assert main(["zeros", "find", "--up-to", "100", "--output", str(out)]) == EXIT_OK
    assert len(out.read_text().splitlines()) == 29
    code = main(["zeros", "check", "--file", str(out), "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    row = doc["rows"][0]
    assert row["T"] == 50.0
    assert row["count"] == 10
    assert row["estimate"] == pytest.approx(8.5478, abs=1e-4)


def test_zeros_check_shuffled_file(tmp_path, zeros100, capsys):
    path = tmp_path / "shuffled.txt"
    ords = list(zeros100.ordinates[:10])
    ords[3], ords[7] = ords[7], ords[3]
    path.write_text("".join(f"{g!r}\n" for g in ords))
    assert main(["zeros", "check", "--file", str(path)]) == EXIT_DATA


def test_zeros_check_missing_file(tmp_path, capsys):
    assert main(["zeros", "check", "--file", str(tmp_path / "none.txt")]) == EXIT_DATA
