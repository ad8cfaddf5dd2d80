import json

import pytest

from fwa import jsonio
from fwa.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in ("gas-cooker", "small", "almost-small"):
        p = tmp_path / f"{name}.json"
        assert main(["fixture", name, str(p)]) == 0
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fixture_round_trips(files, cooker):
    assert jsonio.load(files["gas-cooker"]) == cooker


def test_accept(files, capsys):
    gc = files["gas-cooker"]
    assert run(capsys, "accept", gc, "--input", "S") == (0, "0.1\n", "")
    assert run(capsys, "accept", gc)[1] == "0.1\n"
    code, out, _ = run(capsys, "accept", gc, "--input", "S", "--json")
    assert json.loads(out) == {"grade": 0.1, "input": ["S"]}


def test_accept_extended(files, capsys):
    gc = files["gas-cooker"]
    assert run(capsys, "accept", gc, "--extended", "--input", "S")[1] == "0.2\n"
    code, out, _ = run(capsys, "accept", gc, "--extended", "--word-file", files["almost-small"])
    assert code == 0
    assert float(out) == 0.31622776601683794
    code, out, _ = run(capsys, "accept", gc, "--extended", "--input", "@" + files["small"])
    assert out == "0.2\n"


def test_unknown_token(files, capsys):
    code, out, err = run(capsys, "accept", files["gas-cooker"], "--input", "S XL")
    assert code == 2
    assert err.strip() == "error: unknown token 'XL'"
    code, _, err = run(capsys, "accept", files["gas-cooker"], "--extended", "--input", "XL")
    assert code == 2
    assert "XL" in err


def test_bad_document(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    doc = json.loads((jsonio.dump_word(jsonio.load_word('{"format":"fwa/1","kind":"word","alphabet":["a"],"grades":{}}'))))
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "accept", str(bad))
    assert code == 2
    assert err.startswith("error: $.kind")
    code, _, err = run(capsys, "accept", str(tmp_path / "missing.json"))
    assert code == 2


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["accept"])
    assert info.value.code == 2


def test_retract_and_lift(files, tmp_path, capsys):
    out = tmp_path / "down.json"
    code, _, err = run(capsys, "retract", files["gas-cooker"], str(out))
    assert code == 0 and err == ""
    down = jsonio.load(str(out))
    assert down.step("q0", "3").as_dict() == {"q0": 0.1, "q1": 0.9, "q2": 0.1}
    lifted = tmp_path / "up.json"
    assert run(capsys, "lift", str(out), str(lifted))[0] == 0
    back = tmp_path / "back.json"
    assert run(capsys, "retract", str(lifted), str(back))[0] == 0
    assert back.read_bytes() == out.read_bytes()
    assert run(capsys, "lift", files["gas-cooker"])[0] == 2


def test_extend_eval_and_describe(files, capsys):
    code, out, _ = run(capsys, "extend-eval", files["gas-cooker"], "--state", "q0",
                       "--word-file", files["almost-small"])
    assert json.loads(out) == {"q0": 1.0, "q1": 0.31622776601683794, "q2": 0.1}
    code, out, _ = run(capsys, "extend-eval", files["gas-cooker"], "--state", "q0",
                       "--word-file", files["almost-small"], "--digits", "4")
    assert json.loads(out)["q1"] == 0.3162
    code, out, _ = run(capsys, "describe", files["gas-cooker"], "--word-file", files["almost-small"])
    assert json.loads(out) == {"S": 1.0, "M": 0.31622776601683794, "L": 0.1}
    assert run(capsys, "extend-eval", files["gas-cooker"], "--state", "qx",
               "--word-file", files["small"])[0] == 2


def test_independence_and_consistency(files, capsys):
    code, out, _ = run(capsys, "independence", files["gas-cooker"], "--max-len", "1", "--json")
    rep = json.loads(out)
    assert code == 0
    assert (rep["bound"], rep["witness"], rep["lower_bound"]) == (0.1, ["S"], True)
    code, out, _ = run(capsys, "consistency", files["gas-cooker"], "--max-len", "1")
    assert code == 1
    assert out.startswith("inconsistent")
    code, _, err = run(capsys, "independence", files["gas-cooker"], "--max-len", "9", "--budget", "10")
    assert code == 2
    assert "budget" in err


def test_preserving_and_complete(files, capsys):
    assert run(capsys, "preserving", files["gas-cooker"]) == (1, "not delta-preserving\n", "")
    assert run(capsys, "complete", files["gas-cooker"]) == (0, "complete\n", "")


def test_product_and_homomorphisms(files, tmp_path, capsys):
    gc = files["gas-cooker"]
    prod = tmp_path / "p.json"
    assert run(capsys, "product", gc, gc, str(prod))[0] == 0
    assert len(jsonio.load(str(prod)).states) == 9
    ident = tmp_path / "id.json"
    ident.write_text(json.dumps({"format": "fwa/1", "kind": "state_map",
                                 "mapping": {q: q for q in ("q0", "q1", "q2")}}))
    assert run(capsys, "hom-check", gc, gc, str(ident)) == (0, "homomorphism\n", "")
    img = tmp_path / "img.json"
    assert run(capsys, "hom-image", gc, gc, str(ident), str(img))[0] == 0
    assert run(capsys, "subautomaton", str(img), gc) == (0, "subautomaton\n", "")
    swap = tmp_path / "swap.json"
    swap.write_text(json.dumps({"format": "fwa/1", "kind": "state_map",
                                "mapping": {"q0": "q1", "q1": "q0", "q2": "q2"}}))
    code, out, _ = run(capsys, "hom-check", gc, gc, str(swap), "--json")
    assert code == 1
    assert any(v.startswith("condition 1") for v in json.loads(out)["violations"])
    assert run(capsys, "hom-image", gc, gc, str(swap), str(img))[0] == 1


def test_check_command(capsys):
    argv = ["check", "--suite", "T1,P3", "--trials", "5", "--seed", "2", "--json"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert [r["theorem"] for r in doc["reports"]] == ["T1", "P3"]
    assert run(capsys, *argv)[1] == out
    code, out, _ = run(capsys, "check", "--suite", "RT", "--trials", "3")
    assert out.startswith("RT    PASS")
    assert run(capsys, "check", "--suite", "nope")[0] == 2
    code, out, _ = run(capsys, "check", "--suite", "T1", "--trials", "10", "--budget", "1")
    assert code == 1
    assert "INCOMPLETE" in out
