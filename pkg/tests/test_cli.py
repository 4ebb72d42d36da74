import json

from gausspicard.cli import main
from gausspicard.form import IDENTITY
from gausspicard.generators import T1, T2, M2, dump_generators


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_decompose_t2(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", write(tmp_path, "t2.json", T2.to_json()))
    assert code == 0
    params = json.loads(out)["params"]
    assert params["t"] in ("2", "2/1")


def test_word_identity(tmp_path, capsys):
    code, out, _ = run(capsys, "word", write(tmp_path, "id.json", IDENTITY.to_json()))
    assert code == 0
    assert json.loads(out) == {"command": "word", "word": [], "scalar_unit": "1", "verified": True}


def test_word_scaled(tmp_path, capsys):
    g = (T1 @ M2).scale(-1)
    code, out, _ = run(capsys, "word", write(tmp_path, "g.json", g.to_json()))
    data = json.loads(out)
    assert code == 0 and data["verified"] and data["scalar_unit"] == "-1"


def test_word_u2(tmp_path, capsys):
    code, out, _ = run(capsys, "word", "--u2", write(tmp_path, "u.json", {"rows": [[1, 0], [0, [0, 1]]]}))
    assert code == 0
    assert json.loads(out)["word"] == [["U1", 1], ["U2", 1], ["U1", 1]]


def test_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "decompose", write(tmp_path, "bad.json", {"rows": [[0, 0, 0, 0]] * 3 + [[0, 0, {"num": "?"}, 0]]}))
    assert code == 2 and "rows[3][2]" in err
    code, _, err = run(capsys, "word", str(tmp_path / "missing.json"))
    assert code == 2
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "word", str(p))
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "word", "--u2", write(tmp_path, "u.json", {"rows": [[1, 1], [0, 1]]}))
    assert code == 2
    code, _, _ = run(capsys, "cover", "--piece", "10")
    assert code == 2


def test_cover_piece5_depth0(capsys):
    code, out, _ = run(capsys, "cover", "--piece", "5", "--depth", "0")
    data = json.loads(out)
    assert code == 0 and data["leaf_count"] == 1 and data["piece"] == "Sigma5"
    assert set(data["leaves"][0]) >= {"box", "sphere", "margin"}


def test_cover_depth0_incomplete(capsys):
    code, out, _ = run(capsys, "cover", "--depth", "0")
    assert code == 1 and not json.loads(out)["complete"]


def test_verify_theorem_deterministic(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, out1, err = run(capsys, "verify-theorem", "--roundtrips", "50", "--certificate", str(cert))
    assert code == 0 and "all stages pass" in err
    code, out2, _ = run(capsys, "verify-theorem", "--roundtrips", "50", "--certificate", str(cert))
    assert out1 == out2
    report = json.loads(out1)
    assert report["failed_stage"] is None
    assert all(v["passed"] for v in report["verdicts"].values())
    assert json.loads(cert.read_text())["complete"]


def test_verify_theorem_depth0(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--depth", "0", "--roundtrips", "20")
    report = json.loads(out)
    assert code == 1 and report["failed_stage"] == "e_covering"
    assert report["verdicts"]["e_covering"]["error"] == "depth exhausted"
    assert all(report["verdicts"][k]["passed"] for k in ("a_generators", "b_identities", "c_u2", "d_stabilizer_words"))


def test_verify_theorem_corrupted_generators(tmp_path, capsys):
    data = dump_generators()
    data["R"]["rows"][0][3] = [2, 0]
    code, out, err = run(capsys, "verify-theorem", "--generators", write(tmp_path, "g.json", data))
    report = json.loads(out)
    assert code == 1 and report["failed_stage"] == "a_generators"
    assert report["verdicts"]["a_generators"]["failures"][0]["generator"] == "R"
    assert "matrix" in report["verdicts"]["a_generators"]["failures"][0]
    data.pop("T1")
    code, out, _ = run(capsys, "verify-theorem", "--generators", write(tmp_path, "g2.json", data))
    assert code == 1 and "missing" in json.loads(out)["verdicts"]["a_generators"]["failures"][0]["problem"]


def test_negative_depth(capsys):
    assert run(capsys, "cover", "--depth", "-1")[0] == 2
