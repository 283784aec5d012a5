import json

import pytest

from mdmatch.cli import main


def write_json(path, values, simplices):
    path.write_text(json.dumps({"n": len(values[0]), "vertex_values": values, "simplices": simplices}))
    return str(path)


@pytest.fixture
def edge_file(tmp_path):
    # vertex-valued model of two vertices at 0 joined by an edge at 1
    return write_json(tmp_path / "edge.json", [[0], [0], [1]], [[0, 2], [2, 1]])


@pytest.fixture
def plane_files(tmp_path):
    a = write_json(tmp_path / "a.json", [[0, 0], [1, 1]], [[0, 1]])
    b = write_json(tmp_path / "b.json", [[0, 0], [2, 2]], [[0, 1]])
    return a, b


def run(capsys, *argv):
    code = main([*argv])
    return code, capsys.readouterr()


def test_diagram_rows(capsys, edge_file):
    code, out = run(capsys, "diagram", edge_file)
    assert code == 0
    assert out.out.splitlines()[1:] == ["0,1,1,0,proper", "0,inf,1,0,essential"]


def test_diagram_writes_csv_and_svg(capsys, edge_file, tmp_path):
    code, _ = run(capsys, "diagram", edge_file, "--out", str(tmp_path / "d"))
    assert code == 0
    assert (tmp_path / "d.csv").read_text().startswith("u,v,")
    assert (tmp_path / "d.svg").read_text().startswith("<svg")


def test_diagram_errors(capsys, tmp_path, plane_files):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"n": 1, "vertex_values": [], "simplices": []}))
    assert run(capsys, "diagram", str(empty))[0] == 2
    code, out = run(capsys, "diagram", plane_files[0])
    assert code == 2 and "--pair" in out.err
    assert run(capsys, "diagram", str(tmp_path / "missing.json"))[0] == 2


def test_diagram_on_leaf(capsys, plane_files):
    code, out = run(capsys, "diagram", plane_files[0], "--pair", "1/2,1/2;0,0")
    assert code == 0 and out.out.splitlines()[1:] == ["0,inf,1,0,essential"]
    code, _ = run(capsys, "diagram", plane_files[0], "--point", "0,0;1,1", "--scheme", "adm")
    assert code == 0
    assert run(capsys, "diagram", plane_files[0], "--pair", "1,1;0,0")[0] == 2


def test_match(capsys, tmp_path):
    one = tmp_path / "one.csv"
    one.write_text("u,v\n0,inf\n")
    shifted = tmp_path / "shifted.csv"
    shifted.write_text("u,v\n1,inf\n")
    two = tmp_path / "two.csv"
    two.write_text("u,v,multiplicity\n0,inf,2\n")
    _, out = run(capsys, "match", str(one), str(one))
    assert json.loads(out.out)["distance"] == 0
    _, out = run(capsys, "match", str(one), str(shifted))
    assert json.loads(out.out)["distance"] == 1
    _, out = run(capsys, "match", str(one), str(two))
    assert json.loads(out.out)["distance"] == "inf"


def test_match_complex_inputs(capsys, edge_file, tmp_path):
    csv_path = tmp_path / "d.csv"
    run(capsys, "diagram", edge_file, "--out", str(tmp_path / "d"))
    code, out = run(capsys, "match", edge_file, str(csv_path))
    assert code == 0 and json.loads(out.out)["distance"] == 0


def test_mdmatch(capsys, plane_files, tmp_path):
    a, b = plane_files
    code, out = run(capsys, "mdmatch", a, a, "--grid", "4x5")
    assert code == 0 and json.loads(out.out)["value"] == 0
    code, out = run(capsys, "mdmatch", a, b, "--grid", "4x5")
    report = json.loads(out.out)
    assert code == 0 and report["lower_bound"] and "argmax_pair" in report
    one = write_json(tmp_path / "one.json", [[0], [3]], [[0, 1]])
    assert run(capsys, "mdmatch", a, one)[0] == 2


def test_mdmatch_one_dimensional_equals_match(capsys, tmp_path):
    x = write_json(tmp_path / "x.json", [[0], [2], [1]], [[0, 1], [1, 2]])
    y = write_json(tmp_path / "y.json", [[0], [3], [1], [5]], [[0, 1], [1, 2], [3]])
    _, out = run(capsys, "match", x, y)
    _, out2 = run(capsys, "mdmatch", x, y, "--grid", "3x3")
    assert json.loads(out.out)["distance"] == json.loads(out2.out)["value"]


def test_invariance(capsys):
    code, out = run(capsys, "invariance", "--seed", "42", "--probes", "20")
    report = json.loads(out.out)
    assert code == 0 and report["passed"] and "inputs" in report
    code, out = run(capsys, "invariance", "--schemes", "ladm", "--probes", "5")
    assert code == 0 and json.loads(out.out)["max_discrepancy"] == 0
    assert run(capsys, "invariance", "--schemes", "l7")[0] == 2


def test_invariance_is_byte_identical(capsys):
    argv = ["invariance", "--seed", "3", "--probes", "10", "--grid", "3x3", "--schemes", "adm,ladm,pnorm:3"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first.out == second.out


def test_oracle(capsys, edge_file, tmp_path):
    code, out = run(capsys, "oracle", edge_file)
    assert code == 0 and json.loads(out.out)["disagreements"] == 0
    code, out = run(capsys, "oracle", "--random", "50", "--seed", "1", "--k", "1")
    assert code == 0 and json.loads(out.out)["inputs"] == 50
    bad = tmp_path / "bad.csv"
    bad.write_text("u,v\n0,2\n0,inf\n")
    code, out = run(capsys, "oracle", edge_file, "--diagram", str(bad))
    assert code == 1 and json.loads(out.out)["disagreements"] > 0
    assert run(capsys, "oracle")[0] == 2


def test_off_with_values(capsys, tmp_path):
    off = tmp_path / "tri.off"
    off.write_text("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n")
    vals = tmp_path / "vals.csv"
    vals.write_text("0\n1\n2\n3\n")
    code, out = run(capsys, "diagram", str(off), "--values", str(vals))
    assert code == 0
    assert out.out.splitlines()[1:] == ["0,inf,1,0,essential"]
    code, out = run(capsys, "diagram", str(off), "--values", str(vals), "--k", "1")
    assert code == 0 and out.out.splitlines()[1:] == []


def test_generate_round_trip(capsys, tmp_path):
    code, out = run(capsys, "generate", "--seed", "5", "--n", "3")
    assert code == 0
    path = tmp_path / "g.json"
    path.write_text(out.out)
    code, _ = run(capsys, "diagram", str(path), "--point", "0,0,0;1,2,3")
    assert code == 0


def test_float_mode(capsys, plane_files):
    code, out = run(capsys, "mdmatch", *plane_files, "--grid", "3x3", "--mode", "float", "--scheme", "adm")
    assert code == 0 and isinstance(json.loads(out.out)["value"], (int, float))
