import json
import subprocess
import sys

import pytest

import reference_data as REF
from trop3.cli import main
from trop3.parsing import parse_heights, parse_pluecker, parse_rational
from trop3.triangulation import Triangulation

E2 = ",".join(map(str, REF.TYPICAL_HEIGHTS))
E10 = ",".join(map(str, REF.HONEYCOMB_HEIGHTS))
TYPICAL_TEXT = Triangulation(REF.TYPICAL_FACETS).to_text()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parsers():
    assert parse_rational("1/2") * 2 == 1
    assert parse_rational("-3") == -3
    for bad in ("1.5", "a", "1/", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)
    assert len(parse_heights(E2)) == 20
    assert parse_heights(json.dumps(list(REF.TYPICAL_HEIGHTS))) == parse_heights(E2)
    with pytest.raises(ValueError, match="20"):
        parse_heights(",".join(["1"] * 19))
    with pytest.raises(ValueError, match="6"):
        parse_pluecker("1,2,3")


def test_subdivide(capsys):
    code, out, _ = run(capsys, "subdivide", "--heights", E2)
    assert code == 0 and out.strip() == TYPICAL_TEXT


def test_subdivide_usage_error(capsys):
    code, out, err = run(capsys, "subdivide", "--heights", ",".join(["0"] * 19))
    assert code == 2 and out == "" and "20" in err


def test_line_check_text(capsys):
    code, out, _ = run(capsys, "line-check", "--pluecker", "26,6,17,7,18,0", "--heights", E10)
    assert code == 0
    lines = out.splitlines()
    assert lines[:4] == ["type 01|23", "q01 = (19, 20, 0, 11)", "q23 = (17, 18, 0, 11)",
                         "contained"]
    assert "omega1: [0, 9]: {14,15}; [9, inf]: {5,8}" in out


def test_line_check_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "line-check", "--pluecker", "26,6,17,7,18,0",
                       "--heights", E10)
    data = json.loads(out)
    assert code == 0 and data["result"] == "contained"
    assert [len(c["pieces"]) for c in data["certificates"]] == [1, 1, 2, 2, 1]
    assert data["vertices"]["01"] == [19, 20, 0, 11]


def test_line_check_degenerate(capsys):
    code, out, err = run(capsys, "line-check", "--pluecker", "0,0,0,0,0,0", "--heights", E10)
    assert code == 1 and out == "" and "degenerate" in err


def test_secondary_cone(capsys):
    code, out, _ = run(capsys, "secondary-cone", "--facets", TYPICAL_TEXT, "--format", "json")
    data = json.loads(out)
    assert (data["generated"], len(data["facets"]), data["lineality_dim"]) == (36, 16, 4)


def test_invalid_triangulation_exit_1(capsys):
    code, out, err = run(capsys, "motifs", "--facets", "{{0,1,2,3}}")
    assert code == 1 and out == ""


def test_malformed_facets_exit_2(capsys):
    code, _, _ = run(capsys, "motifs", "--facets", "{{0,1,2")
    assert code == 2


def test_motifs_json(capsys, tmp_path):
    p = tmp_path / "typical.txt"
    p.write_text(TYPICAL_TEXT)
    code, out, _ = run(capsys, "motifs", "--facets-file", str(p), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["total"] == 51 and data["counts"] == REF.MOTIF_COUNTS


def test_generic(capsys):
    code, out, _ = run(capsys, "generic", "--facets", TYPICAL_TEXT, "--heights", E2)
    assert code == 0 and out.startswith("not generic")
    assert out.count("on wall") == 2


def test_delta2_census(capsys):
    code, out, _ = run(capsys, "delta2-census")
    assert code == 0 and out.strip() == "79 triangulations, 18 orbits, all regular"


def test_store_commands(capsys, tmp_path, monkeypatch):
    src = tmp_path / "in.txt"
    src.write_text(json.dumps([list(f) for f in REF.HONEYCOMB_FACETS]) + "\n")
    store = tmp_path / "store.jsonl"
    code, out, _ = run(capsys, "ingest", str(src), "--store", str(store), "--no-visibility")
    assert code == 0 and "ingested 1 record" in out
    monkeypatch.setenv("TROP3_STORE", str(store))
    code, out, _ = run(capsys, "query", "--kind", "altshuler", "--value", "0", "--format", "json")
    assert code == 0 and [r["id"] for r in json.loads(out)] == [1]
    code, out, _ = run(capsys, "query", "--kind", "motifs", "--value", "oops")
    assert code == 2
    code, out, _ = run(capsys, "secondary-cone", "--record", "1")
    assert code == 0 and "lineality dimension: 4" in out


def test_missing_store(capsys, monkeypatch):
    monkeypatch.delenv("TROP3_STORE", raising=False)
    code, _, err = run(capsys, "query", "--kind", "id", "--value", "1")
    assert code == 2 and "store" in err


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "trop3.cli", "delta2-census", "--format", "json"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout) == {"triangulations": 79, "orbits": 18, "all_regular": True}
