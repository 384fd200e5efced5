import json
import os

import numpy as np
import pytest

from isozonoid.bodies import cube_body
from isozonoid.cli import main
from isozonoid.measures import hexagonal_measure


@pytest.fixture
def cube3_json(tmp_path):
    path = tmp_path / "cube3.json"
    path.write_text(json.dumps(cube_body(3).to_json_dict()))
    return str(path)


@pytest.fixture
def hex_json(tmp_path):
    path = tmp_path / "hex.json"
    path.write_text(json.dumps(hexagonal_measure().to_json_dict()))
    return str(path)


def test_volume_subcommand(cube3_json, tmp_path, capsys):
    out = tmp_path / "vol.json"
    rc = main(["volume", "--body", cube3_json, "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["value"] == pytest.approx(8.0, abs=1e-9)
    assert data["method"] == "EXACT"


def test_distance_wassO(hex_json, tmp_path):
    out = tmp_path / "d.json"
    rc = main(["distance", "--kind", "wassO", "--measure", hex_json,
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["value"] > 0.1
    assert "certificate" in data


def test_distance_hausO(hex_json, tmp_path):
    out = tmp_path / "d.json"
    rc = main(["distance", "--kind", "hausO", "--measure", hex_json,
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["value"] == pytest.approx(np.pi / 6, abs=1e-9)


def test_john_subcommand(cube3_json, tmp_path):
    out = tmp_path / "john.json"
    rc = main(["john", "--body", cube3_json, "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert np.allclose(np.array(data["ellipsoid_shape"]), np.eye(3), atol=1e-8)
    assert data["isoperimetric_ratio"] == pytest.approx(216.0, abs=1e-6)
    assert len(data["contact_measure"]["atoms"]) == 6


def test_verify_s1_suite(tmp_path):
    out = tmp_path / "report.json"
    rc = main(["verify", "--suite", "s1", "--seed", "0", "--out", str(out)])
    assert rc == 0
    rows = json.loads(out.read_text())
    assert len(rows) >= 8
    assert all(r["passed"] for r in rows)
    csv_path = tmp_path / "report.csv"
    header = csv_path.read_text().splitlines()[0]
    assert header.split(",")[:3] == ["suite", "label", "n"]


def test_verify_planar_suite(tmp_path):
    out = tmp_path / "planar.json"
    rc = main(["verify", "--suite", "planar", "--out", str(out)])
    assert rc == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 11


def test_transport_subcommand(tmp_path):
    out = tmp_path / "t.csv"
    rc = main(["transport", "--p", "1.5", "--check", "box", "--grid", "32",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,value,bound,margin"
    assert len(lines) == 1 + 2 * 32


def test_byte_identical_reports(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    main(["verify", "--suite", "ballbarthe", "--count", "5", "--seed", "7",
          "--out", str(a)])
    main(["verify", "--suite", "ballbarthe", "--count", "5", "--seed", "7",
          "--out", str(b)])
    ra = json.loads(a.read_text())
    rb = json.loads(b.read_text())
    for x, y in zip(ra, rb):
        x.pop("runtime")
        y.pop("runtime")
    assert ra == rb


def test_env_seed_override(tmp_path, monkeypatch):
    out = tmp_path / "r.json"
    monkeypatch.setenv("ISOZONOID_SEED", "12345")
    rc = main(["verify", "--suite", "ballbarthe", "--count", "3",
               "--out", str(out)])
    assert rc == 0


def test_usage_error_exit_2(tmp_path):
    assert main(["volume", "--body", str(tmp_path / "missing.json")]) == 2
    assert main(["nonsense"]) == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert main(["verify", "--help"]) == 0
