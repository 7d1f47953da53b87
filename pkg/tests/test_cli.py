import json
import subprocess
import sys

import pytest

from multisetcodes.cli import csv_to_rows, main


def run(args, capsys):
    status = main(args)
    out = capsys.readouterr().out
    return status, out


def run_json(args, capsys):
    status, out = run(args, capsys)
    return status, json.loads(out)


def test_sidon_verify(capsys):
    status, res = run_json(["sidon", "verify", "--group", "Z13", "--set", "0,1,3,9", "--h", "2"], capsys)
    assert status == 0 and res["valid"] is True and res["schema_version"] == 1
    status, res = run_json(["sidon", "verify", "--group", "Z7", "--set", "0,1,2", "--h", "2"], capsys)
    assert status == 2 and res["valid"] is False


def test_sidon_product_group(capsys):
    status, res = run_json(["sidon", "verify", "--group", "Z2xZ6", "--set", "0:0,1:1,0:5", "--h", "3"], capsys)
    assert status == 0
    status, res = run_json(["sidon", "search", "--group", "Z12", "--size", "3", "--h", "3"], capsys)
    assert status == 2 and res["found"] is False


def test_constructions(capsys):
    status, res = run_json(["sidon", "singer", "--m", "3"], capsys)
    assert status == 0 and res["sidon_set"]["group"]["moduli"] == [13]
    status, res = run_json(["sidon", "bose-chowla", "--q", "4", "--h", "2"], capsys)
    assert status == 0 and len(res["sidon_set"]["elements"]) == 4


def test_phi(capsys):
    status, res = run_json(["sidon", "phi", "--h", "3", "--q", "3"], capsys)
    assert status == 0 and res["exact"] == 12


def test_code_optimal(capsys):
    status, res = run_json(["code", "optimal", "--q", "3", "--n", "3", "--h", "1"], capsys)
    assert status == 0 and res["M"] == 4 and len(res["witness"]) == 4


def test_budget_exit_status(capsys, tmp_path):
    man = tmp_path / "m.json"
    status, res = run_json(["code", "optimal", "--q", "4", "--n", "9", "--h", "2", "--budget-nodes", "10", "--manifest", str(man)], capsys)
    assert status == 3 and res["error"] == "budget exhausted"
    assert json.loads(man.read_text())["budget_exhausted"] is True


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("MULTISET_BUDGET_MS", "1")
    status, res = run_json(["sidon", "phi", "--h", "2", "--q", "7"], capsys)
    assert status == 3 and "exhausted" in res["error"]


def test_code_build_decode(capsys, tmp_path):
    path = tmp_path / "code.json"
    status, _ = run(["code", "build", "--group", "Z7", "--set", "0,1,3", "--h", "2", "--n", "7", "--out", str(path)], capsys)
    assert status == 0
    status, res = run_json(["code", "distance", "--code", str(path)], capsys)
    assert res == {"schema_version": 1, "size": 6, "min_distance": 3}
    status, res = run_json(["code", "decode", "--code", str(path), "--received", "5,0,0"], capsys)
    assert status == 0 and res["codeword"] == [7, 0, 0] and res["cost"] == 2


def test_decode_tie_is_negative(capsys, tmp_path):
    path = tmp_path / "bin.json"
    path.write_text(json.dumps({"q": 2, "n": 6, "codewords": [[0, 6], [3, 3], [6, 0]]}))
    status, res = run_json(["code", "decode", "--code", str(path), "--received", "1,4"], capsys)
    assert status == 2 and res["unique"] is False


def test_tiling(capsys, tmp_path):
    status, res = run_json(["tiling", "check", "--anticode", "2,2,1", "--generators", "2,2;0,6"], capsys)
    assert status == 0 and res["packing"] and res["tiling"]
    lat = tmp_path / "lat.json"
    lat.write_text(json.dumps({"m": 2, "generators": [[3, 0], [0, 3]]}))
    status, res = run_json(["tiling", "check", "--anticode", "2,1,1", "--lattice", str(lat)], capsys)
    assert status == 2 and res["packing"] and not res["tiling"]


def test_bounds_csv_roundtrip(capsys, tmp_path):
    out = tmp_path / "bounds.csv"
    status, _ = run(["bounds", "table", "--q-range", "2:3", "--n-range", "3:5", "--h-range", "1:2", "--out", str(out)], capsys)
    assert status == 0
    rows = csv_to_rows(out.read_text())
    assert len(rows) == 12
    row = next(r for r in rows if (r["q"], r["n"], r["h"]) == (3, 3, 1))
    assert row["lower"] == 4 and row["upper_r0l1"] == 5
    status, res = run_json(["bounds", "table", "--q-range", "2:3", "--n-range", "3:5", "--h-range", "1:2", "--format", "json"], capsys)
    assert res["rows"] == rows


def test_simulate_reproducible(capsys, tmp_path):
    path = tmp_path / "code.json"
    main(["code", "build", "--group", "Z7", "--set", "0,1,3", "--h", "2", "--n", "7", "--out", str(path)])
    args = ["simulate", "--code", str(path), "--pattern", "0,2,0,0", "--seed", "9", "--trials", "5"]
    first = run(args, capsys)
    second = run(args, capsys)
    assert first == second
    res = json.loads(first[1])
    assert res["successes"] == 5


def test_manifest(capsys, tmp_path):
    man = tmp_path / "man.json"
    run(["sidon", "phi", "--h", "2", "--q", "3", "--seed", "4", "--manifest", str(man)], capsys)
    m = json.loads(man.read_text())
    assert m["seed"] == 4 and m["exit_status"] == 0 and m["budget_exhausted"] is False
    assert m["config"]["command"] == "sidon" and "wall_time_s" in m and m["tool_version"]


def test_altconstr_roundtrips(capsys, tmp_path):
    cw = tmp_path / "cw.json"
    status, _ = run(["altconstr", "vieta", "encode", "--p", "3", "--m", "1", "--n", "3", "--h", "1", "--message", "1,2", "--out", str(cw)], capsys)
    assert status == 0
    roots = json.loads(cw.read_text())["codeword"]["roots"]
    status, res = run_json(
        ["altconstr", "vieta", "decode", "--p", "3", "--m", "1", "--n", "3", "--h", "1", "--codeword", str(cw), "--roots", ",".join(map(str, roots[1:]))],
        capsys,
    )
    assert res["message"] == [1, 2]
    status, res = run_json(["altconstr", "seq", "encode", "--q-tilde", "5", "--n", "4", "--h", "2", "--message", "3,4"], capsys)
    pairs = res["codeword"]
    received = ",".join(f"{i}:{s}" for i, s in pairs[2:])
    status, res = run_json(["altconstr", "seq", "decode", "--q-tilde", "5", "--n", "4", "--h", "2", "--received", received], capsys)
    assert res["message"] == [3, 4]


def test_error_status(capsys):
    status, res = run_json(["code", "distance", "--code", "/nonexistent.json"], capsys)
    assert status == 1 and "error" in res


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["sidon"])
    assert exc.value.code == 2 or exc.value.code == 1


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "multisetcodes.cli", "sidon", "verify", "--group", "Z2xZ6", "--set", "0:0,1:1,0:5", "--h", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["valid"]


def test_bounds_table_wide_grid(capsys):
    status, res = run_json(["bounds", "table", "--q-range", "2:4", "--n-range", "3:10", "--h-range", "1:3", "--format", "json"], capsys)
    assert status == 0
    assert all(r["lower"] <= min(r["upper_fixed"], r["upper_best"]) for r in res["rows"])
