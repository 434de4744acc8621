import csv
import io
import json
import subprocess
import sys

import pytest

from zeroschemes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_hilbert_examples(capsys):
    code, out, _ = run(capsys, "hilbert", "--surface", "p2", "--d", "3", "--tiles", "2")
    assert code == 0 and rows(out)[0]["h0"] == "2"
    code, out, _ = run(capsys, "hilbert", "--surface", "p1p1", "--d", "2", "--e", "2", "--double", "3")
    r = rows(out)[0]
    assert code == 0 and (r["verdict"], r["h0"]) == ("Defective", "1")
    code, out, _ = run(capsys, "hilbert", "--surface", "p2", "--d", "1")
    assert code == 0 and rows(out)[0]["h0"] == "3"


def test_hilbert_header(capsys):
    _, out, _ = run(capsys, "hilbert", "--surface", "p2", "--d", "2", "--points", "1", "--seed", "9", "--trials", "2")
    assert "# seed=9" in out and "# trials=2" in out and "# p=2305843009213693951" in out


def test_hilbert_fat_flag(capsys):
    code, out, _ = run(capsys, "hilbert", "--surface", "p2", "--d", "5", "--fat", "3:2", "--fat", "1:1")
    r = rows(out)[0]
    assert code == 0 and r["length"] == "13" and r["config"] == "fat3=2;point=1"


def test_uncataloged_defect_exits_2(capsys):
    # two triple points on quartics: the line through them is a fixed component
    code, out, _ = run(capsys, "hilbert", "--surface", "p2", "--d", "4", "--fat", "3:2")
    r = rows(out)[0]
    assert code == 2 and (r["verdict"], r["h0"], r["expected_h0"]) == ("Inconclusive", "4", "3")


def test_hilbert_inconclusive_exit(capsys, tmp_path):
    # two double points on conics with an explicit record that bypasses the catalog
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "surface": "P2", "d": 2,
        "schemes": [{"kind": "double", "support": ["1", "2"]}, {"kind": "double", "support": ["5", "7"]}],
    }))
    code, out, _ = run(capsys, "hilbert", "--config", str(cfg))
    assert code == 2 and rows(out)[0]["verdict"] == "Inconclusive"


def test_hilbert_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"surface": "p2", "d": 3, "counts": {"tile": 3}, "seed": 4, "trials": 2}))
    code, out, _ = run(capsys, "hilbert", "--config", str(cfg), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["header"]["seed"] == 4 and doc["rows"][0]["h0"] == 0


@pytest.mark.parametrize("argv,field", [
    (["hilbert", "--d", "3"], "surface"),
    (["hilbert", "--surface", "p1p1", "--d", "3"], "e"),
    (["hilbert", "--surface", "hirz", "--e", "2", "--a", "3", "--b", "1"], "b"),
    (["hilbert", "--surface", "p2", "--d", "-1"], "d"),
])
def test_usage_errors_name_field(capsys, argv, field):
    code, _, err = run(capsys, *argv)
    assert code == 1 and f"error: {field}:" in err


def test_config_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "hilbert", "--config", str(bad))
    assert code == 1 and "config:" in err
    bad.write_text(json.dumps({"surface": "p2", "d": 2, "schemes": [{"kind": "tile"}]}))
    code, _, err = run(capsys, "hilbert", "--config", str(bad))
    assert code == 1 and "schemes[0]" in err
    bad.write_text(json.dumps({"surface": "p2", "d": 2, "counts": {"tile": -1}}))
    code, _, err = run(capsys, "hilbert", "--config", str(bad))
    assert code == 1 and "counts.tile" in err


def test_argparse_errors_exit_1(capsys):
    assert main(["hilbert", "--fat", "x"]) == 1
    assert main(["frobnicate"]) == 1


def test_verify_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "tiles-p2", "--dmax", "10")
    assert code == 0 and all(r["agrees"] == "true" for r in rows(out))
    code, out, _ = run(capsys, "verify", "fattiles-p2", "--dmax", "8")
    defective = [r for r in rows(out) if r["verdict"] == "Defective"]
    assert code == 0 and len(defective) == 2 and all(r["witness"] for r in defective)
    code, out, _ = run(capsys, "verify", "hirzebruch", "--e", "1", "--amax", "3", "--bmargin", "4")
    assert code == 0 and all(r["agrees"] == "true" for r in rows(out))


def test_verify_json_summary(capsys):
    code, out, _ = run(capsys, "verify", "p1p1", "--dmax", "2", "--emax", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["p1p1"]["family_defective_r"] == "2u+1"


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 1 and "statement" in err


def test_regularity_examples(capsys):
    code, out, _ = run(capsys, "regularity", "new11", "--t", "2")
    assert code == 0 and "# index=5" in out
    code, out, _ = run(capsys, "regularity", "new3", "--t", "3", "--e", "4", "--d", "6")
    (r,) = [r for r in rows(out) if r["e"] == "4"]
    assert r["h1"] == "4"
    code, out, _ = run(capsys, "regularity", "new2_0", "--t", "3", "--d", "7")
    h1 = {r["d"]: int(r["h1"]) for r in rows(out)}
    assert h1["7"] != 0 and h1["8"] == 0
    code, _, err = run(capsys, "regularity", "new2_0", "--t", "3", "--d", "30")
    assert code == 1 and "params" in err


def test_secant_examples(capsys):
    code, out, _ = run(capsys, "secant", "--surface", "hirz", "--e", "3", "--a", "1", "--b", "3", "--r", "1,2")
    assert code == 0 and [r["value"] for r in rows(out)] == ["2", "4"]
    _, out, _ = run(capsys, "secant", "--surface", "p2", "--d", "3", "--squares", "2")
    assert rows(out)[0]["value"] == "7"
    _, out, _ = run(capsys, "secant", "--surface", "p2", "--d", "2", "--double", "2")
    (r,) = rows(out)
    assert r["value"] == "4" and r["expected_value"] == "5" and r["notes"] == "defective"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "zeroschemes", "hilbert", "--surface", "p2", "--d", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "P2(1)" in out.stdout


def test_out_file(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "hilbert", "--surface", "p2", "--d", "2", "--tiles", "1", "--out", str(path))
    assert code == 0 and out == "" and path.read_text().startswith("# version=")
