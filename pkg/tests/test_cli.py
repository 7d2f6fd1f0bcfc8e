import json
import subprocess
import sys

import pytest

from acutetri import jsonio
from acutetri.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_surface(capsys):
    code, out, _ = run(capsys, "surface")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert (summary["faces"], summary["edges"], summary["vertices"]) == (14, 24, 12)
    assert summary["isometries"] == 48


def test_geodesics(capsys):
    code, out, _ = run(capsys, "geodesics", "--from", "v0", "--to", "v11")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 6
    assert abs(data["distance"] - (1 + 3 ** 0.5)) < 1e-12


def test_geodesics_all_strips(capsys):
    code, out, _ = run(capsys, "geodesics", "--from", "v0", "--to", "v11", "--all-strips")
    assert code == 0
    data = json.loads(out)
    strips = data["strips"]
    assert sum(x["shortest"] for x in strips) == data["count"] == 6
    longer = [x["length"] for x in strips if not x["shortest"]]
    assert longer and min(longer) > data["distance"] + 0.1


def test_geodesics_bad_point_is_usage_error(capsys):
    code, _, err = run(capsys, "geodesics", "--from", "q1", "--to", "v2")
    assert code == 2
    assert json.loads(err)["error"] == "usage"


def test_geodesics_same_point_fails(capsys):
    code, _, err = run(capsys, "geodesics", "--from", "v1", "--to", "v1")
    assert code == 1
    assert json.loads(err)["error"] == "geodesic"


def test_fan(capsys):
    code, out, _ = run(capsys, "fan", "--vertex", "4")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 20 and data["even_gaps"]


@pytest.mark.parametrize("argv", [
    ["fan", "--vertex", "12"],
    ["minimality", "--check", "nope"],
    ["surface", "--tolerance", "eps_len"],
    ["surface", "--tolerance", "bogus=1"],
    ["surface", "--edge-length", "0"],
    ["surface", "--max-faces", "0"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(err.strip().splitlines()[-1])["error"] == "usage"


def test_triangulate_then_verify(capsys, tmp_path):
    path = tmp_path / "acute.json"
    code, _, _ = run(capsys, "triangulate", "--kind", "acute12", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["valid"] and rep["classification"] == "acute"


def test_verify_corrupted_exits_one(capsys, tmp_path):
    path = tmp_path / "octa.json"
    run(capsys, "triangulate", "--kind", "nonobtuse8", "--out", str(path))
    data = json.loads(path.read_text())
    data["triangles"].pop()
    path.write_text(json.dumps(data))
    code, out, err = run(capsys, "verify", "--in", str(path))
    assert code == 1
    assert not json.loads(out)["valid"]
    assert json.loads(err)["error"] == "verdict"


def test_verify_unreadable_is_usage_error(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "verify", "--in", str(path))
    assert code == 2 and json.loads(err)["error"] == "usage"


@pytest.mark.parametrize("check", ["parity", "nonobtuse-lb", "acute8"])
def test_minimality_checks(capsys, tmp_path, check):
    dest = tmp_path / "cert.json"
    code, out, _ = run(capsys, "minimality", "--check", check, "--json", str(dest))
    assert code == 0
    assert jsonio.loads(dest.read_text()) == json.loads(out)


def test_impossible_tolerance_reports_failure(capsys):
    # an angle tolerance below float resolution makes the even-gap check fail
    code, _, err = run(capsys, "fan", "--vertex", "0", "--tolerance", "eps_ang=1e-30")
    assert code == 1
    assert json.loads(err)["error"] == "verdict"


def test_paper_check_deterministic(capsys, tmp_path):
    code, out, _ = run(capsys, "paper-check", "--svg-dir", str(tmp_path))
    assert code == 0
    summary = json.loads(out)["summary"]
    assert summary["all_green"]
    assert summary["acute_minimum"] == 12 and summary["nonobtuse_minimum"] == 8
    assert sorted(p.name for p in tmp_path.iterdir())
    proc = subprocess.run([sys.executable, "-m", "acutetri", "paper-check"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == out
