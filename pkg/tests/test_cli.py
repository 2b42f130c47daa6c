import json
import shutil
from pathlib import Path

import pytest

from gvpairs.cli import CACHE_ENV, CliConfig, UsageError, main
from gvpairs.tables import shipped_table_paths

INPUTS = Path(__file__).resolve().parent.parent / "demos" / "inputs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# -- local-curve --------------------------------------------------------------

def test_local_curve_closed_case(capsys):
    code, doc, _ = run_json(capsys, "local-curve", "--l1", "-1", "--l2", "-1", "--no-cache")
    assert code == 0
    assert doc["schema_version"] == 1
    assert doc["report"]["conjecture_holds"] is True
    assert doc["report"]["l"] == [-1, -1, 0]
    assert doc["report"]["p12"] == "0"


def test_local_curve_cy_violation(capsys):
    code, out, err = run(capsys, "local-curve", "--l1", "1", "--l2", "1", "--l3", "1")
    assert code == 2
    assert "Calabi-Yau" in err and out == ""


@pytest.mark.parametrize("argv", [
    ["local-curve"],
    ["local-curve", "--l1", "1"],
    ["local-curve", "--grid", "3", "1"],
    ["local-curve", "--grid", "0", "1", "--l1", "0"],
    ["local-curve", "--l1", "x", "--l2", "0"],
    ["local-curve", "--l1", "0", "--l2", "0", "--parallel", "0"],
    ["frobnicate"],
])
def test_local_curve_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects it before dispatch
        code = exc.code
    assert code == 2


def test_local_curve_formats(capsys):
    _, csv_out, _ = run(capsys, "local-curve", "--l1", "2", "--l2", "-1", "--format", "csv", "--no-cache")
    lines = csv_out.splitlines()
    assert lines[0] == "l1,l2,l3,gw01,gw02,p11,p12,conjecture_holds"
    assert lines[1].startswith("2,-1,-3,") and lines[1].endswith(",true")
    _, md, _ = run(capsys, "local-curve", "--l1", "2", "--l2", "-1", "--format", "markdown", "--no-cache")
    assert md.startswith("## local-curve") and "| l1 | l2 |" in md


def test_local_curve_conjecture_failure_exit_code(capsys, monkeypatch):
    from gvpairs import cli

    real = cli._sorted_report

    def broken(l):
        d = real(l)
        d["conjecture_holds"] = False
        return d

    monkeypatch.setattr(cli, "_sorted_report", broken)
    code, doc, _ = run_json(capsys, "local-curve", "--l1", "0", "--l2", "0", "--no-cache")
    assert code == 1
    assert doc["failures"] == [[0, 0, -2]]


def test_small_grid_cache_and_parallel_determinism(capsys, tmp_path):
    args = ["local-curve", "--grid", "-3", "3"]
    c1, first, _ = run(capsys, *args, "--cache-dir", str(tmp_path / "c"))
    assert c1 == 0 and len(list((tmp_path / "c").iterdir())) > 0
    _, cached, _ = run(capsys, *args, "--cache-dir", str(tmp_path / "c"))
    _, fresh, _ = run(capsys, *args, "--no-cache", "--parallel", "2")
    assert first == cached == fresh
    code, doc, _ = run_json(capsys, *args, "--cache-dir", str(tmp_path / "c"), "--verify-cache")
    assert code == 0 and doc["cache_mismatches"] == []


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "env"))
    run(capsys, "local-curve", "--l1", "3", "--l2", "-1")
    assert len(list((tmp_path / "env").iterdir())) == 1


def test_corrupted_cache_entry_is_caught(capsys, tmp_path):
    cdir = tmp_path / "c"
    run(capsys, "local-curve", "--l1", "2", "--l2", "-1", "--cache-dir", str(cdir))
    (entry,) = cdir.iterdir()
    doc = json.loads(entry.read_text())
    doc["p12"] = "0"
    entry.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "local-curve", "--l1", "2", "--l2", "-1", "--cache-dir", str(cdir), "--verify-cache")
    assert code == 1
    assert json.loads(out)["cache_mismatches"] == [[2, -1, -3]]


def test_full_grid(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "local-curve", "--grid", "-10", "10", "--no-cache")
    assert code == 0
    assert doc["instances"] == 441 and doc["passed"] == 441 and doc["failures"] == []


def test_output_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "partitions", "--count", "3", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["count"] == 6


# -- series ----------------------------------------------------------------------

def test_series_p0_invert(capsys):
    code, doc, _ = run_json(capsys, "series", "p0-invert", "--input", str(INPUTS / "elliptic_fibration_p0.json"))
    assert code == 0
    assert doc["n1"]["[1]"] == "-20"
    assert all(doc["n1"][f"[{d}]"] == "0" for d in range(2, 9))


def test_series_meeting_toy(capsys):
    code, doc, _ = run_json(capsys, "series", "meeting", "--input", str(INPUTS / "meeting_toy.json"))
    assert code == 0
    # a = 3, c = 5 in the fixture
    assert doc["meeting"]["[1] [1]"] == "14"
    assert doc["meeting"]["[1] [2]"] == "14"


def test_series_genus1_invert(capsys):
    code, doc, _ = run_json(capsys, "series", "genus1-invert", "--input", str(INPUTS / "product_with_elliptic_curve.json"))
    assert code == 0
    assert doc["n1"] == {"[1]": "42", **{f"[{d}]": "0" for d in range(2, 7)}}


def test_series_ideal_check(capsys):
    code, doc, _ = run_json(capsys, "series", "ideal-check", "--input", str(INPUTS / "ideal_fixture.json"))
    assert code == 0 and doc["passed"] is True


def test_series_ideal_check_failure(capsys, tmp_path):
    doc = json.loads((INPUTS / "ideal_fixture.json").read_text())
    doc["p0"]["[1]"] = 5
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, out, _ = run_json(capsys, "series", "ideal-check", "--input", str(f))
    assert code == 1 and out["passed"] is False


def test_series_gv0_and_invert(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "series", "gv0", "--input", str(INPUTS / "gv0_rank2.json"))
    assert code == 0
    assert doc["gw0"]["[0, 2]"] == "-1/4"
    inv = {"rank": 2, "degree": [1, 1], "cutoff": 4, "insertions": 0, "gw0": doc["gw0"]}
    f = tmp_path / "gw.json"
    f.write_text(json.dumps(inv))
    code, back, _ = run_json(capsys, "series", "gv0-invert", "--input", str(f))
    src = json.loads((INPUTS / "gv0_rank2.json").read_text())["n0"]
    assert {k: v for k, v in back["n0"].items() if v != "0"} == {k: str(v) for k, v in src.items()}


def test_series_genus1_forward(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"rank": 1, "cutoff": 3, "n0_c2": {"[1]": 24}}))
    code, doc, _ = run_json(capsys, "series", "genus1", "--input", str(f))
    # c2 term: -q - q^2/2 - q^3/3.  Meeting numbers m11 = m12 = m21 = 24
    # add +q^2 (from m11) and +2q^3 (from the ordered pair m12, m21).
    assert doc["gw1"] == {"[1]": "-1", "[2]": "1/2", "[3]": "5/3"}


def test_series_macmahon_product(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"rank": 1, "cutoff": 3, "n1": {"[1]": -20}}))
    code, doc, _ = run_json(capsys, "series", "macmahon-product", "--input", str(f))
    assert [doc["p0"][f"[{d}]"] for d in range(4)] == ["1", "-20", "150", "-400"]


def test_series_multiple_cover(capsys):
    code, doc, _ = run_json(capsys, "series", "multiple-cover", "--input", str(INPUTS / "multiple_cover.json"))
    assert code == 0
    assert doc["N"]["2 [2]"] == "-21/4"
    assert doc["N"]["4 [1]"] == "3"


def test_series_integrality_failure_exit_1(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"rank": 1, "cutoff": 2, "p0": {"[1]": 0, "[2]": "1/2"}}))
    code, _, err = run(capsys, "series", "p0-invert", "--input", str(f))
    assert code == 1 and "not an integer" in err


@pytest.mark.parametrize("doc", [
    "not json",
    json.dumps([1, 2]),
    json.dumps({"cutoff": 2}),
    json.dumps({"rank": 1, "cutoff": 2, "n1": {"[1, 0]": 1}}),
    json.dumps({"rank": 1, "cutoff": 2, "n1": {"[1]": "x"}}),
    json.dumps({"rank": 1, "cutoff": 2, "n1": {"nope": 1}}),
    json.dumps({"rank": 1, "cutoff": 2, "degree": [0]}),
])
def test_series_schema_errors_exit_2(capsys, tmp_path, doc):
    f = tmp_path / "x.json"
    f.write_text(doc)
    code, _, err = run(capsys, "series", "macmahon-product", "--input", str(f))
    assert code == 2 and "error" in err


def test_series_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "series", "meeting", "--input", str(tmp_path / "none.json"))
    assert code == 2


def test_series_meeting_schema_errors(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"rank": 1, "cutoff": 2, "basis_size": 2, "kunneth": [[1, 2], [3, 4]]}))
    code, _, err = run(capsys, "series", "meeting", "--input", str(f))
    assert code == 2 and "symmetric" in err


# -- partitions --------------------------------------------------------------------

def test_partitions_count(capsys):
    code, doc, _ = run_json(capsys, "partitions", "--count", "4")
    assert code == 0 and doc["count"] == 13


def test_partitions_bounds(capsys):
    assert run(capsys, "partitions", "--count", "-1")[0] == 2
    assert run(capsys, "partitions", "--list", "11")[0] == 2
    assert run(capsys, "partitions", "--series", "15")[0] == 2


def test_partitions_series_compare(capsys):
    code, doc, _ = run_json(capsys, "partitions", "--series", "12", "--compare")
    assert code == 0 and doc["matches_macmahon"] is True
    assert doc["coefficients"][-1] == 1479


def test_partitions_list(capsys):
    code, doc, _ = run_json(capsys, "partitions", "--list", "2")
    assert doc["diagrams"] == [[[0, 0, 0], [1, 0, 0]], [[0, 0, 0], [0, 1, 0]], [[0, 0, 0], [0, 0, 1]]]


# -- verify-all ----------------------------------------------------------------------

def test_verify_all_negative_control(capsys, tmp_path):
    d = tmp_path / "tables"
    d.mkdir()
    for p in shipped_table_paths():
        shutil.copy(p, d / p.name)
    sextic = d / "sextic.csv"
    sextic.write_text(sextic.read_text().replace(",sextic,P0,1,0\n", ",sextic,P0,1,7\n"))
    code, doc, err = run_json(capsys, "verify-all", "--only", "13", "--tables-dir", str(d))
    assert code == 1
    assert doc["failing"] == [13]
    assert "13" in err and "tables" in err


def test_verify_all_malformed_table(capsys, tmp_path):
    d = tmp_path / "tables"
    d.mkdir()
    (d / "x.csv").write_text("source,geometry,kind,class,value\ns,sextic,P0,1,1/0\n")
    code, doc, _ = run_json(capsys, "verify-all", "--only", "13", "--tables-dir", str(d))
    assert code == 1 and "x.csv:2" in doc["rows"][0]["detail"]


def test_verify_all_subset_parallel_identical(capsys):
    _, a, _ = run(capsys, "verify-all", "--only", "3", "5", "6", "9", "--parallel", "1")
    _, b, _ = run(capsys, "verify-all", "--only", "3", "5", "6", "9", "--parallel", "4")
    assert a == b
    assert json.loads(a)["all_pass"] is True


def test_cli_config_validation():
    with pytest.raises(UsageError):
        CliConfig(output_format="xml")
    with pytest.raises(UsageError):
        CliConfig(parallelism=0)
    with pytest.raises(UsageError):
        CliConfig(cutoffs={"series": 0})
