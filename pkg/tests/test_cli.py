import copy
import json
from pathlib import Path

import pytest

from gradalg import registry
from gradalg.cli import main

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
CUBIC = str(DATA / "twisted_cubic.ideal")
POINT = str(DATA / "point.ideal")


def write(tmp_path, name, lines, vars_="x, y, z"):
    p = tmp_path / name
    p.write_text(f"ring: {{vars: [{vars_}], char: 32003}}\n" + "\n".join(lines) + "\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gb_json(capsys):
    code, out, _ = run(capsys, "gb", CUBIC, "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert len(d["groebner_basis"]) == 3
    assert d["ring"]["vars"] == ["x0", "x1", "x2", "x3"]


def test_res_text(capsys):
    code, out, _ = run(capsys, "res", CUBIC)
    assert code == 0
    assert "0 → R(-3)^2 → R(-2)^3 → R" in out
    assert "reg(R/I) = 1" in out


def test_hilb(capsys):
    code, out, _ = run(capsys, "hilb", CUBIC, "--format", "json", "--to", "4")
    d = json.loads(out)
    assert d["H"] == [1, 4, 7, 10, 13] and d["multiplicity"] == 3


def test_rho_depends_only_on_hilbert(tmp_path, capsys):
    # complete intersection and lex ideal, both with H = 1,3,3,1 but different Betti tables
    a = write(tmp_path, "a.ideal", ["x^2", "y^2", "z^2"])
    b = write(tmp_path, "b.ideal", ["x^2", "x*y", "x*z", "y^3", "y^2*z", "y*z^2", "z^4"])
    assert run(capsys, "hilb", a, "--format", "json")[1] == run(capsys, "hilb", b, "--format", "json")[1]
    assert run(capsys, "res", a)[1] != run(capsys, "res", b)[1]
    ra = run(capsys, "rho", a)
    rb = run(capsys, "rho", b)
    assert ra[0] == rb[0] == 0
    # 3 H(2) for the complete intersection
    assert ra[1] == rb[1] == "rho = 9\n"


def test_tangent_and_obstruct(tmp_path, capsys):
    a = write(tmp_path, "a.ideal", ["x^2", "y^3", "z^4"])
    code, out, _ = run(capsys, "obstruct", a, "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["tangent"] == 16 and d["obstruction"] == 0
    code, out, _ = run(capsys, "tangent", a)
    assert code == 0 and "16" in out


def test_apolar_differentiation(capsys):
    code, out, _ = run(capsys, "apolar", str(DATA / "lev2comp_V2.dual"), "--differentiation", "--format", "json")
    assert code == 0
    # order-2 partials of x^6y + xy^6 + z^7 span x^4y, x^5 + y^5, xy^4, z^5
    assert json.loads(out)["hilbert"] == [1, 3, 4, 5, 5, 4, 3, 1, 0]


def test_link_and_chain(capsys):
    code, out, _ = run(capsys, "link", POINT, "2", "2", "2", "--format", "json")
    assert code == 0
    d = json.loads(out)["step"]
    assert d["degree_J"] + d["degree_J2"] == 8
    code, out, _ = run(capsys, "chain", POINT, str(DATA / "exlink.chain"), "--seed", "19", "--format", "json")
    d = json.loads(out)
    assert d["anchor"] == "start" and d["conditional"] is True
    assert d["seed"] == 19


def test_points_and_truncate(tmp_path, capsys):
    code, out, _ = run(capsys, "points", "twisted_cubic", "8", "--seed", "3", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["hilbert"][:4] == [1, 4, 7, 8] and d["seed"] == 3
    code, out, _ = run(capsys, "truncate", CUBIC, "4", "2", "--format", "json")
    assert json.loads(out)["hilbert"] == [1, 4, 7, 10, 2, 0]


def test_gorsec(tmp_path, capsys):
    B = write(tmp_path, "ci.ideal", ["x^2 - y*z", "y^2 - x*z"])
    code, out, _ = run(capsys, "gorsec", B, "6", "--format", "json")
    assert code == 0 and json.loads(out)["hilbert"] == [1, 3, 4, 4, 4, 3, 1]
    code, _, err = run(capsys, "gorsec", B, "5")
    assert code == 2 and "reg" in err


def test_predict(tmp_path, capsys):
    A = write(tmp_path, "m2.ideal", ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"])
    code, out, _ = run(capsys, "predict", "corart", "--A", A, "--format", "json")
    assert code == 0 and json.loads(out)["conditional"] is False
    code, _, err = run(capsys, "predict", "maintrans", "--A", A, "--B", CUBIC, "--t", "2")
    assert code in (1, 2) and err


def test_lev2_strings(capsys):
    # partials of the two cubics span all quadrics, so H = 1,3,6,2
    code, out, _ = run(capsys, "lev2", "X^3 + Y^3 + Z^3", "X*Y*Z", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["hilbert"] == [1, 3, 6, 2]
    assert d["tangent"] == sum(pt["quotient_dim"] for pt in d["parts"]) or not d["certified"]
    assert run(capsys, "lev2", "X^3", "X^2*Y + Z^2")[0] == 2


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify-example", "exlink")
    assert code == 0
    assert "rho: expected 20, got 20" in out
    assert "ext1 dims: expected [0, 1], got [0, 1]" in out
    assert "component dims: expected [20, 21], got [20, 21]" in out


def test_mismatch_exits_1(monkeypatch, capsys):
    reg = copy.deepcopy(registry.load_registry())
    reg["exlink"]["rho"] = 21
    monkeypatch.setattr(registry, "load_registry", lambda: reg)
    code, out, err = run(capsys, "verify-example", "exlink")
    assert code == 1
    assert "FAIL exlink: A_1: rho: expected 21, got 20" in out
    assert "mismatch" in err


def test_expectation_only_example(capsys):
    code, out, _ = run(capsys, "verify-example", "twocomp", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["seed"] is None


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "verify-example", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "gb", str(tmp_path / "missing.ideal"))[0] == 2
    bad = write(tmp_path, "bad.ideal", ["x + q"])
    code, _, err = run(capsys, "gb", bad)
    assert code == 2 and "unknown variable" in err
    notart = write(tmp_path, "line.ideal", ["x"])
    assert run(capsys, "rho", notart)[0] == 2


def test_byte_identical_repeats(capsys):
    first = run(capsys, "points", "rnc:4", "9", "--seed", "5", "--format", "json")
    second = run(capsys, "points", "rnc:4", "9", "--seed", "5", "--format", "json")
    assert first == second


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv("GRADALG_SEED", "5")
    env = run(capsys, "points", "rnc:4", "9", "--format", "json")
    monkeypatch.delenv("GRADALG_SEED")
    flag = run(capsys, "points", "rnc:4", "9", "--seed", "5", "--format", "json")
    assert env == flag
    monkeypatch.setenv("GRADALG_CHAR", "101")
    code, out, _ = run(capsys, "points", "twisted_cubic", "5", "--format", "json")
    assert code == 0
    assert all(0 <= c < 101 for pt in json.loads(out)["points"] for c in pt)
    monkeypatch.setenv("GRADALG_SEED", "abc")
    assert run(capsys, "points", "twisted_cubic", "5")[0] == 2
