import json
import subprocess
import sys

import pytest

from stratlat import EndoFunction, discrete
from stratlat.cli import main
from stratlat.fixtures import five_element_strong_model, four_element_nonstrong_model, pentagon_lattice


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def last_json(text):
    return json.loads(text.strip().splitlines()[-1])


def test_check_strong_model(files, capsys):
    m = files("m.json", five_element_strong_model().to_json())
    code, out, _ = run(capsys, "check", m, "--suite", "strong")
    assert code == 0
    assert "classification: strong-symmetric" in out


def test_check_symmetric_fails_with_witness(files, capsys):
    m = files("m.json", four_element_nonstrong_model().to_json())
    code, out, _ = run(capsys, "check", m, "--suite", "symmetric")
    assert code == 1
    assert last_json(out) == {"axiom": "A3d", "witness": [0, "0"]}


def test_check_b_suite_and_json(files, capsys):
    m = files("m.json", five_element_strong_model().to_json())
    code, out, _ = run(capsys, "check", m, "--suite", "B", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["holds"] and {r["axiom"] for r in payload["reports"]} >= {"B1", "B2", "B3", "B4", "C", "D", "B2*"}


@pytest.mark.parametrize("content", ["{not json", json.dumps({"elements": ["a"]}), json.dumps([1, 2])])
def test_malformed_input_exits_2(files, capsys, content):
    m = files("bad.json", content)
    code, _, err = run(capsys, "check", m)
    assert code == 2 and err.startswith("error:")


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.json"))
    assert code == 2


def test_represent(files, capsys):
    m = files("m.json", five_element_strong_model().to_json())
    code, out, _ = run(capsys, "represent", m)
    assert code == 0
    assert out.splitlines()[0] == "level 0: 1 2 bot top"
    assert "  0 -> (bot,0,0)" in out
    code, out, _ = run(capsys, "represent", m, "--json")
    payload = json.loads(out)
    assert set(payload) == {"system", "isomorphism"}
    assert len(payload["system"]["tower"]) == 3


def test_represent_discrete_gives_constant_tower(files, capsys):
    m = files("m.json", discrete(pentagon_lattice(), 2).to_json())
    code, out, _ = run(capsys, "represent", m, "--json")
    assert code == 0
    maps = json.loads(out)["system"]["maps"]
    assert all(k == v for mp in maps for k, v in mp["table"].items())


def test_represent_non_model_exits_2(files, capsys):
    L = pentagon_lattice()
    data = discrete(L, 1).to_json()
    data["preorders"] = [{"alpha": 0, "pairs": [], "include_leq": False}]
    m = files("m.json", data)
    code, _, err = run(capsys, "represent", m)
    assert code == 2 and "not a model" in err


def test_lfp(files, capsys):
    S = five_element_strong_model()
    m = files("m.json", S.to_json())
    f = files("f.json", EndoFunction.identity(S).to_json())
    code, out, _ = run(capsys, "lfp", m, f)
    assert code == 0
    assert out.splitlines()[0] == "least fixed point: bot"
    c = files("c.json", EndoFunction.constant(S, S.lattice.index("2")).to_json())
    code, out, _ = run(capsys, "lfp", m, c, "--json")
    assert json.loads(out)["lfp"] == "2"


def test_lfp_not_weakly_monotone_exits_2(files, capsys):
    S = five_element_strong_model()
    m = files("m.json", S.to_json())
    f = files("f.json", {"map": {"bot": "bot", "0": "1", "1": "1", "2": "top", "top": "top"}})
    code, _, err = run(capsys, "lfp", m, f)
    assert code == 2 and "witness" in err


def test_solve_and_wfs(files, capsys):
    p = files("p.lp", "p.\n")
    code, out, _ = run(capsys, "solve", p)
    assert code == 0 and out.startswith("p = T_0")
    loop = files("loop.lp", "p :- not p.\n")
    code, out, _ = run(capsys, "solve", loop, "--diff-wfs")
    assert code == 0 and "p = 0" in out
    code, out, _ = run(capsys, "wfs", loop)
    assert out.strip() == "p = undef"


def test_solve_json_schema(files, capsys):
    p = files("p.lp", "q :- not p.\n")
    code, out, _ = run(capsys, "solve", p, "--json", "--trace")
    payload = json.loads(out)
    assert payload["atoms"]["q"] == {"value": "T_1", "collapsed": "true", "level": 1}
    assert payload["atoms"]["p"] == {"value": "F_0", "collapsed": "false", "level": 0}
    assert [lv["alpha"] for lv in payload["levels"]] == [0, 1]


def test_solve_parse_error_exits_2(files, capsys):
    p = files("bad.lp", "p :- q\n")
    code, _, err = run(capsys, "solve", p)
    assert code == 2 and ":2:1:" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-elems", "4", "--depth", "2", "--count", "5")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert all("preorders" in json.loads(line) for line in lines)
    code, _, _ = run(capsys, "enumerate", "--max-elems", "9", "--depth", "1")
    assert code == 2


def test_output_is_deterministic(files, capsys):
    m = files("m.json", four_element_nonstrong_model().to_json())
    first = run(capsys, "check", m, "--suite", "dual")
    second = run(capsys, "check", m, "--suite", "dual")
    assert first == second and first[0] == 1
    assert "witness" in last_json(first[1])


def test_color_switch(files, capsys, monkeypatch):
    m = files("m.json", five_element_strong_model().to_json())
    monkeypatch.setenv("STRATLAT_COLOR", "1")
    _, colored, _ = run(capsys, "check", m)
    monkeypatch.setenv("STRATLAT_COLOR", "0")
    _, plain, _ = run(capsys, "check", m)
    assert "\x1b[" in colored and "\x1b[" not in plain


def test_console_script(files):
    m = files("m.json", five_element_strong_model().to_json())
    proc = subprocess.run([sys.executable, "-m", "stratlat.cli", "check", m], capture_output=True, text=True)
    assert proc.returncode == 0 and "classification" in proc.stdout
