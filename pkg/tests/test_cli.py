import json
import math
import shutil
import subprocess
from importlib import resources

import pytest

from orbitact.cli import main


def _fixture_path(name):
    return str(resources.files("orbitact") / "fixtures" / f"{name}.json")


def test_kappa_text(capsys):
    assert main(["kappa", _fixture_path("cp1_k3")]) == 0
    out = capsys.readouterr().out
    assert "cp1_k3: AGREE" in out
    assert out.count("-1.000000000000") == 3


def test_kappa_json_is_byte_identical(capsys):
    args = ["kappa", _fixture_path("s2_a3_b4_n-2"), "--json", "--routes", "lax-character,weyl"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    payload = json.loads(first)
    assert payload["verdict"] == "AGREE"
    assert set(payload["routes"]) == {"lax-character", "weyl"}


def test_kappa_overrides(capsys):
    assert main(["kappa", _fixture_path("cp1_k1"), "--steps", "64", "--samples", "256",
                 "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["routes"]["direct"]["value"]["re"] + 1) <= 1e-6


def test_kappa_invalid_eta_exit_2(tmp_path, capsys):
    cfg = json.loads(open(_fixture_path("cp1_k1"), encoding="utf-8").read())
    cfg["eta"] = {"h_diag": [0.3, -0.3]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    assert main(["kappa", str(path)]) == 2
    assert "eta" in capsys.readouterr().err


def test_kappa_missing_file_exit_2(tmp_path, capsys):
    assert main(["kappa", str(tmp_path / "absent.json")]) == 2


def test_kappa_open_isotopy_exit_1(tmp_path, capsys):
    cfg = json.loads(open(_fixture_path("cp1_k1"), encoding="utf-8").read())
    cfg["curve"]["terms"][0]["poly"] = [1.0]
    path = tmp_path / "open.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    assert main(["kappa", str(path)]) == 1
    assert "INCONCLUSIVE" in capsys.readouterr().out


def test_bad_routes_flag_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["kappa", _fixture_path("cp1_k1"), "--routes", "magic"])
    assert info.value.code == 2


def test_verify_paper(capsys):
    assert main(["verify-paper", "--workers", "4"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 14


def test_verify_paper_json(capsys):
    assert main(["verify-paper", "--json", "--routes", "weyl"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 14 and all(r["passed"] for r in rows)


def test_character_command(capsys):
    phi = 1.0
    assert main(["character", "--mu", "2,0", "--phases", "1.0,-1.0", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dimension"] == 3
    assert payload["character"]["re"] == pytest.approx(1 + 2 * math.cos(2 * phi), abs=1e-11)
    assert main(["character", "--mu", "0,0,0", "--phases", "0.5,0.5,-1"]) == 0
    assert "dimension = 1" in capsys.readouterr().out
    assert main(["character", "--mu", "1,0,0", "--phases", "0,0,0", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["character"]["re"] == 3.0


def test_character_invalid_weight_exit_2(capsys):
    assert main(["character", "--mu", "0,2", "--phases", "0,0"]) == 2
    assert main(["character", "--mu", "1,0", "--phases", "0.1,0.1"]) == 2


@pytest.mark.skipif(shutil.which("orbitact") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["orbitact", "character", "--mu", "1,0", "--phases", "0,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "dimension = 2" in proc.stdout
