"""Command-line interface: commands, flags, exit codes."""

import json

import pytest

from klat.cli import main


@pytest.fixture
def kummer_file(tmp_path):
    path = tmp_path / "kummer2.json"
    path.write_text(json.dumps({"spec": "U+U+U+<-6>"}))
    return str(path)


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({"spec": "A2"}))
    return str(path)


def test_info_text(kummer_file, capsys):
    assert main(["info", kummer_file]) == 0
    out = capsys.readouterr().out
    assert "rank 7" in out
    assert "signature (3, 4)" in out
    assert "Z/6" in out


def test_info_json(a2_file, capsys):
    assert main(["info", a2_file, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rank"] == 2
    assert data["determinant"] == 3
    assert data["p_elementary"] == {"p": 3, "r": 2, "a": 1}


def test_info_rejects_odd_lattice(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"gram": [[1, 0], [0, 2]]}))
    assert main(["info", str(bad)]) == 2
    assert "not even" in capsys.readouterr().err


def test_info_rejects_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["info", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_missing_file(capsys):
    assert main(["info", "/nonexistent/l.json"]) == 2


def test_group_restricted(a2_file, capsys):
    assert main(["group", "--lattice", a2_file, "--restricted",
                 "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["order"] == 3


def test_walls(kummer_file, capsys):
    assert main(["walls", "--n", "2", "--lattice", kummer_file,
                 "--bound", "2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data["wall_divisibilities"]) <= {2, 3, 6}
    assert data["wall_divisibilities"]


def test_walls_wrong_n(kummer_file, capsys):
    assert main(["walls", "--n", "3", "--lattice", kummer_file]) == 2


def test_embed(tmp_path, kummer_file, capsys):
    sub = tmp_path / "a1x4neg.json"
    sub.write_text(json.dumps(
        {"gram": [[-2, 0, 0, 0], [0, -2, 0, 0],
                  [0, 0, -2, 0], [0, 0, 0, -2]]}))
    assert main(["embed", "--sub", str(sub), "--ambient", kummer_file,
                 "--bound", "1", "--max-solutions", "5", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["count"] > 0
    # the order-2 exclusion: every such embedding carries a wall
    assert all(not s["trivial_divisibility"] for s in data["solutions"])


def test_verify_single_table(capsys):
    assert main(["verify", "--table", "2.1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["rows"]) == 7
    assert data["summary"]["verified"] == 7
    assert data["unexplained"] == []


def test_verify_pinned_cells_reported(capsys):
    assert main(["verify", "--table", "3.3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    impossible = [r for r in data["rows"]
                  if r["status"] == "analytically-impossible"]
    assert impossible
    assert data["unexplained"] == []


def test_verify_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--table", "2.5", "--json",
                 "--out", str(out)]) == 0
    on_disk = out.read_text()
    assert on_disk == capsys.readouterr().out
    json.loads(on_disk)
