import json

from opchain.cli import main


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main(list(argv) + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_verify(tmp_path):
    code, text = run(tmp_path, "verify", "en", "--n", "2", "--r-max", "4")
    assert code == 0 and json.loads(text)["passed"]
    assert run(tmp_path, "verify", "commutative", "--r-max", "6")[0] == 0
    assert run(tmp_path, "verify", "linfinity", "--r-max", "4")[0] == 0
    assert main(["verify", "en", "--n", "0"]) == 2
    assert main(["verify", "nonsense"]) == 2


def test_e1(tmp_path, capsys):
    code, text = run(tmp_path, "e1", "--n", "2", "--s-max", "5", "--ring", "Z")
    assert code == 0
    assert "matches Lemma pattern" in capsys.readouterr().out
    assert json.loads(text)["entries"]["2,2"]["ranks"]["0"] == 1
    code, _ = run(tmp_path, "e1", "--n", "1", "--s-max", "4", "--ring", "F2")
    assert code == 0
    assert main(["e1", "--n", "inf"]) == 3


def test_e1_csv(tmp_path):
    code, text = run(tmp_path, "e1", "--n", "1", "--s-max", "3", "--format", "csv", name="t.csv")
    lines = text.splitlines()
    assert lines[0] == "object,arity_or_s,t,degree,rank,torsion"
    assert lines[1] == "e1,2,2,0,1,"


def test_phi(tmp_path):
    code, text = run(tmp_path, "phi", "--n", "2", "--scalar", "1", "--r-max", "4")
    assert code == 0 and json.loads(text)["class_scalar"] == "1"
    code, text = run(tmp_path, "phi", "--n", "1", "--scalar", "0")
    doc = json.loads(text)
    assert doc["class_scalar"] == "0" and not any(doc["arities"].values())
    code, text = run(tmp_path, "phi", "--n", "2", "--scalar", "5", "--ring", "F3")
    assert json.loads(text)["class_scalar"] == "2"
    assert main(["phi", "--n", "2", "--scalar", "1/3"]) == 2


def test_homology(tmp_path, capsys):
    code, text = run(tmp_path, "homology", "linfinity", "--r-max", "4")
    assert code == 0
    assert json.loads(text)["factorial_check"]["degree0_ranks"] == [1, 1, 2, 6]
    code, text = run(tmp_path, "homology", "en-coinvariants", "--n", "2", "--s-max", "4")
    assert code == 0 and all(json.loads(text)["vanishing_above_bound"].values())
    _, a = run(tmp_path, "homology", "cobar", "--n", "2", "--r-max", "3", name="a.json")
    _, b = run(tmp_path, "homology", "en", "--n", "2", "--r-max", "3", name="b.json")
    assert json.loads(a)["summaries"] == json.loads(b)["summaries"]
    assert main(["homology", "spheres"]) == 2


def test_transpose_and_report(tmp_path):
    code, text = run(tmp_path, "transpose", "--n", "2")
    doc = json.loads(text)
    assert code == 0 and doc["passed"] and doc["lambda_factor"] == "1"
    code, text = run(tmp_path, "report", "--n", "2", "--s-max", "4", "--ring", "F2")
    assert code == 0 and json.loads(text)["conclusion"] == "pi_0 = k; pi_i = * (i>0)"


def test_outputs_are_deterministic(tmp_path, monkeypatch):
    _, a = run(tmp_path, "homology", "en", "--n", "2", "--r-max", "4", name="a.json")
    monkeypatch.setenv("OPCHAIN_THREADS", "4")
    _, b = run(tmp_path, "homology", "en", "--n", "2", "--r-max", "4", name="b.json")
    assert a == b
    _, a = run(tmp_path, "phi", "--n", "2", "--r-max", "4", name="c.json")
    _, b = run(tmp_path, "phi", "--n", "2", "--r-max", "4", name="d.json")
    assert a == b


def test_bad_environment_and_flags(monkeypatch):
    monkeypatch.setenv("OPCHAIN_THREADS", "many")
    assert main(["e1", "--n", "1"]) == 2
    monkeypatch.delenv("OPCHAIN_THREADS")
    assert main(["e1", "--n", "1", "--s-max", "0"]) == 2
    assert main(["e1", "--n", "1", "--ring", "R"]) == 2
    assert main(["phi", "--n", "1", "--format", "csv"]) == 2
    assert main([]) == 2
