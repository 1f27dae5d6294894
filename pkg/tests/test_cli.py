import csv
import io
import json

import pytest

from homcodes.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_family_ring(capsys):
    rc, out, _ = run(capsys, "family", "--name", "ring", "--d", "3")
    assert rc == 0
    assert json.loads(out)["code"]["params"] == "[[9,1,3]]"


def test_family_torsion_is_reported(capsys):
    rc, out, _ = run(capsys, "family", "--name", "P", "--D", "3")
    assert rc == 0
    assert json.loads(out)["code"]["error"] == "TorsionObstruction"


def test_family_missing_parameter_is_usage_error(capsys):
    rc, _, err = run(capsys, "family", "--name", "kitaev")
    assert rc == 2 and "--d" in err


def test_emit_and_reload_complex(capsys, tmp_path):
    path = tmp_path / "opt3.json"
    rc, _, _ = run(capsys, "family", "--name", "optimized-toric", "--d", "3", "--emit", str(path),
                   "--no-code")
    assert rc == 0 and path.exists()
    rc, out, _ = run(capsys, "quantum", "--complex", str(path), "--D", "3", "--report")
    assert rc == 0 and json.loads(out)["params"] == "[[10,2,3]]"
    rc, out, _ = run(capsys, "distance", "--code", str(path))
    assert rc == 0 and json.loads(out) == {"homological": 3, "bruteforce": 3}


def test_check_matrix_export_round_trip(capsys, tmp_path):
    src = tmp_path / "k2.json"
    run(capsys, "family", "--name", "kitaev", "--d", "2", "--emit", str(src), "--no-code")
    mat = tmp_path / "k2.txt"
    rc, _, _ = run(capsys, "quantum", "--complex", str(src), "--export-check-matrix", str(mat))
    assert rc == 0
    rc, out, _ = run(capsys, "distance", "--code", str(mat), "--method", "brute")
    assert rc == 0 and json.loads(out) == {"bruteforce": 2}
    rc, _, err = run(capsys, "distance", "--code", str(mat), "--method", "homological")
    assert rc == 2


def test_classical_commands(capsys, tmp_path):
    rc, out, _ = run(capsys, "classical", "--family", "K", "--param", "5", "--report")
    obj = json.loads(out)
    assert rc == 0 and obj["params"] == "[10,6,3]"
    path = tmp_path / "k5.json"
    path.write_text(json.dumps(obj["code"]))
    rc, out, _ = run(capsys, "classical", "--check-homological", str(path))
    assert rc == 0 and json.loads(out)["homological"] is True
    rc, _, _ = run(capsys, "classical", "--family", "C")
    assert rc == 2


def test_simulate_csv(capsys, tmp_path):
    src = tmp_path / "opt3.json"
    run(capsys, "family", "--name", "optimized-toric", "--d", "3", "--emit", str(src), "--no-code")
    rc, out, _ = run(capsys, "simulate", "--code", str(src), "--p", "0", "0.05",
                     "--shots", "2000", "--seed", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rc == 0 and [r["p"] for r in rows] == ["0.0", "0.05"]
    assert rows[0]["failures"] == "0"


def test_scan_optimal(capsys):
    rc, out, _ = run(capsys, "scan-optimal", "--d", "5")
    assert rc == 0 and "minimum vertices 13, achieved" in out


def test_rates_classical_rows(capsys):
    rc, out, _ = run(capsys, "rates", "--classical", "--samples", "5")
    rows = {r["family"]: r for r in csv.DictReader(io.StringIO(out))}
    assert rc == 0
    assert (rows["C5"]["x_exact"], rows["C5"]["y_exact"]) == ("1/5", "2/5")
    assert (rows["K4"]["x_exact"], rows["K4"]["y_exact"]) == ("1/2", "1/6")


def test_invalid_family_is_rejected_by_argparse(capsys):
    with pytest.raises(SystemExit):
        main(["family", "--name", "klein"])
