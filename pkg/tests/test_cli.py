import json
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor


from hzseries.cli import run
from hzseries.hurwitz import load_or_build
from hzseries.series import SeriesTable


def test_coeff_table_json():
    code, out = run(["coeff", "--m", "5", "--n-max", "20", "--tol", "1e-8", "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["m"] == 5 and obj["rows"][0] == {"gamma": ["0/1", "0/1"], "n": "0/1", "value": "1/1"}
    assert json.dumps(obj, indent=1) == out
    assert SeriesTable.from_json_obj(obj).to_json() == out
    for row in obj["rows"]:
        v = row["value"]
        assert isinstance(v, str) or set(v) == {"value", "error_bound"}


def test_single_coefficient():
    code, out = run(["coeff", "--m", "25", "--n", "1", "--format", "json"])
    assert code == 0 and json.loads(out)["value"] == "-6/1"
    code, out = run(["coeff", "--m", "5", "--n-frac", "1/5", "--n", "0", "--gamma", "1/5,3/5", "--tol", "1e-8"])
    assert code == 0 and out.startswith("C(1/5")


def test_csv_table():
    code, out = run(["table", "--m", "4", "--n-max", "2", "--format", "csv"])
    assert code == 0 and out.splitlines()[0] == "gamma,n,value,error_bound"


def test_usage_errors():
    assert run(["coeff", "--m", "7", "--n", "1"])[0] == 2
    assert run(["coeff", "--m", "5", "--n", "1"])[0] == 2  # nonsquare m needs --tol
    assert run(["coeff", "--m", "5", "--n", "1", "--tol", "-1"])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["verify", "--catalog", "nonsense"])[0] == 2
    assert run(["calibrate", "--m", "24"])[0] == 2


def test_verify_all():
    code, out = run(["verify", "--catalog", "all", "--n-max", "1000", "--format", "json"])
    assert code == 0
    results = json.loads(out)["results"]
    assert results and all(r["status"] == "pass" for r in results)


def test_verify_corrupted_cache(tmp_path):
    path = tmp_path / "hurwitz.txt"
    load_or_build(str(path), 404)
    lines = path.read_text().splitlines()
    lines[23] = "23 4/1"
    path.write_text("\n".join(lines) + "\n")
    code, out = run(["verify", "--catalog", "m5", "--n-max", "100", "--cache", str(path), "--format", "json"])
    assert code == 1
    failed = [r for r in json.loads(out)["results"] if r["status"] == "fail"]
    assert failed and failed[0]["witness"]["m"] == 5


def test_cache_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "env.txt"
    monkeypatch.setenv("HZSERIES_CACHE", str(path))
    code, out = run(["hurwitz", "--n", "23"])
    assert code == 0 and out == "H(23) = 3/1\n"
    assert path.exists()


def test_hurwitz_check():
    code, out = run(["hurwitz", "--n-max", "60", "--check", "--format", "json"])
    assert code == 0 and json.loads(out)["witness"] is None


def test_calibrate_reports_witness():
    code, out = run(["calibrate", "--m", "5", "--n-max", "30", "--format", "json"])
    assert code == 1
    rep = json.loads(out)["reports"][0]
    assert rep["kappa"]["3"] == "5/3" and rep["violations"][0]["n"] == "25"
    code, out = run(["calibrate", "--m", "5", "--gamma", "1/5,3/5", "--n-max", "60"])
    assert code == 0


def test_scalarize_and_selftest():
    code, out = run(["scalarize", "--p", "5", "--n-max", "10", "--format", "json"])
    assert code == 0 and json.loads(out)["coefficients"][0]["vector"] == "1/1"
    assert run(["selftest"])[0] == 0


def test_deterministic_under_threads():
    args = ["table", "--m", "13", "--n-max", "12", "--tol", "1e-8", "--format", "json"]
    with ThreadPoolExecutor(4) as ex:
        outs = list(ex.map(lambda _: run(args)[1], range(4)))
    assert len(set(outs)) == 1
    assert run(args)[1] == outs[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hzseries", "hurwitz", "--n", "16"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "H(16) = 3/2\n"
    proc = subprocess.run([sys.executable, "-m", "hzseries", "coeff", "--m", "7", "--n", "1"], capture_output=True, text=True)
    assert proc.returncode == 2 and "error" in proc.stderr
