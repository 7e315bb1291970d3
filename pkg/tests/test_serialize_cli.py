from __future__ import annotations

import json
from argparse import Namespace
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from filicoh import serialize as ser
from filicoh.cli import _seed, main, run
from filicoh.cohomology import Cochain, from_dual_coordinates, random_cocycle
from filicoh.extdef import deform
from filicoh.fundamental import associated_leibniz_algebra
from filicoh.suite import nilpotent_example


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(ser.dumps(doc))
    return str(path)


@pytest.fixture
def a4_file(tmp_path, a4):
    return _write(tmp_path, "a4.json", ser.algebra_to_json(a4))


def _perturbed(a4):
    doc = ser.algebra_to_json(a4)
    doc["f"].append({"idx": [1, 2, 3], "target": 1, "num": 1, "den": 1})
    return doc


# -- serialization -----------------------------------------------------------------

def test_algebra_roundtrip(a4, a4a4):
    for A in (a4, a4a4):
        text = ser.dumps(ser.algebra_to_json(A))
        B = ser.algebra_from_json(json.loads(text))
        assert B == A
        assert ser.dumps(ser.algebra_to_json(B)) == text


def test_leibniz_roundtrip(a4a4):
    L = associated_leibniz_algebra(a4a4)
    doc = ser.algebra_to_json(L)
    assert doc["antisymmetric"] is False
    assert ser.algebra_to_json(ser.algebra_from_json(doc)) == doc


def test_simple_algebra_entry(a4):
    doc = ser.algebra_to_json(a4)
    assert {"idx": [1, 2, 3], "target": 4, "num": -1, "den": 1} in doc["f"]
    assert doc["signature"] == [1, 1, 1, 1]


@given(seed=st.integers(0, 10_000), action=st.sampled_from(["trivial", "adjoint"]), p=st.integers(0, 2))
def test_cochain_roundtrip(seed, action, p, a4):
    c = Cochain.random(a4, action, p, random.Random(seed), density=0.4)
    text = ser.dumps(ser.cochain_to_json(c))
    back = ser.cochain_from_json(json.loads(text), a4)
    assert back == c
    assert ser.dumps(ser.cochain_to_json(back)) == text


def test_cochain_entries_antisymmetrized_on_read(a4):
    doc = {"action": "trivial", "p": 1, "entries": [{"blocks": [[2, 1]], "z": 3, "num": 1, "den": 1}]}
    c = ser.cochain_from_json(doc, a4)
    assert c.evaluate([(0, 1)], 2) == -1
    doc["entries"].append({"blocks": [[1, 2]], "z": 3, "num": 1, "den": 1})
    with pytest.raises(ser.FormatError):
        ser.cochain_from_json(doc, a4)


@pytest.mark.parametrize("doc", [
    {"n": 3, "f": []},
    {"n": 3, "dim": 4, "f": [{"idx": [1, 2, 9], "target": 1, "num": 1}]},
    {"n": 3, "dim": 4, "f": [{"idx": [2, 1, 3], "target": 1, "num": 1}]},
    {"n": 3, "dim": 4, "f": [{"idx": [1, 2, 3], "target": 1, "num": 1, "den": 0}]},
    {"n": 3, "dim": 4, "f": [{"idx": [1, 2, 3], "target": 1, "num": 0.5}]},
])
def test_malformed_algebras(doc):
    with pytest.raises(ser.FormatError):
        ser.algebra_from_json(doc)


def test_deformation_json(a4):
    D = deform(a4, random_cocycle(a4, "adjoint", 1, random.Random(0)), 2)
    doc = ser.deformation_to_json(D)
    assert doc["order"] == 2
    assert all(len(e["coeffs"]) == 3 for e in doc["f"])
    assert json.loads(ser.dumps(doc)) == doc


# -- command line --------------------------------------------------------------------

def test_algebra_simple_command(capsys):
    assert main(["algebra", "simple", "--n", "3", "--signature", "++++"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 4
    assert {"idx": [1, 2, 3], "target": 4, "num": -1, "den": 1} in doc["f"]


def test_algebra_sum_command(tmp_path, a4_file):
    code, doc = run(["algebra", "sum", a4_file, a4_file])
    assert code == 0 and doc["dim"] == 8 and doc["ideals"] == [[1, 4], [5, 8]]


def test_check_fi_exit_codes(tmp_path, a4, a4_file):
    assert run(["check", "fi", a4_file])[0] == 0
    code, doc = run(["check", "fi", _write(tmp_path, "bad.json", _perturbed(a4))])
    assert code == 1
    assert doc["worst_case"]["x"] and doc["worst_case"]["y"]


def test_cohomology_command(a4_file):
    code, doc = run(["cohomology", "--action", "adjoint", "--degree", "1", a4_file])
    assert code == 0
    assert (doc["dimZ"], doc["dimB"], doc["dimH"]) == (10, 10, 0)


def test_cohomology_of_abelian_is_informational(tmp_path, abelian4):
    path = _write(tmp_path, "ab.json", ser.algebra_to_json(abelian4))
    code, doc = run(["cohomology", "--action", "adjoint", "--degree", "1", path])
    assert code == 0 and doc["dimH"] == 16


def test_killing_command(tmp_path, a4a4, a4_file):
    code, doc = run(["killing", "--mode", "gram", a4_file])
    assert code == 0 and doc["rank"] == 6
    path = _write(tmp_path, "aa.json", ser.algebra_to_json(a4a4))
    code, doc = run(["killing", "--mode", "kasymov", path])
    assert code == 0 and doc["nondegenerate"] is True


def test_extend_command(tmp_path, a4, a4_file):
    c = Cochain.random(a4, "trivial", 1, random.Random(1))
    cpath = _write(tmp_path, "c.json", ser.cochain_to_json(c))
    code, doc = run(["extend", a4_file, "--cocycle", cpath, "--trivialize"])
    assert code == 0
    assert doc["fi"]["passed"] and doc["trivialization"]["success"]


def test_extend_non_cocycle_exit_one(tmp_path):
    N, bad = nilpotent_example()
    path = _write(tmp_path, "nil.json", ser.algebra_to_json(N))
    cpath = _write(tmp_path, "c.json", ser.cochain_to_json(bad))
    code, doc = run(["extend", path, "--cocycle", cpath])
    assert code == 1 and not doc["fi"]["passed"]


def test_trivialize_needs_semisimple(tmp_path, abelian4):
    c = Cochain.random(abelian4, "trivial", 1, random.Random(1))
    path = _write(tmp_path, "ab.json", ser.algebra_to_json(abelian4))
    cpath = _write(tmp_path, "c.json", ser.cochain_to_json(c))
    assert run(["extend", path, "--cocycle", cpath, "--trivialize"])[0] == 2


def test_deform_command(tmp_path, a4, a4_file):
    c = random_cocycle(a4, "adjoint", 1, random.Random(2))
    cpath = _write(tmp_path, "c.json", ser.cochain_to_json(c))
    code, doc = run(["deform", a4_file, "--cocycle", cpath, "--order", "2", "--trivialize"])
    assert code == 0
    assert doc["obstruction"]["closed"] and doc["trivialization"]["success"]


def test_deform_non_cocycle_exit_one(tmp_path, a4, a4_file):
    D = [[1 if (i, j) == (0, 1) else -1 if (i, j) == (1, 0) else 0 for j in range(4)] for i in range(4)]
    cpath = _write(tmp_path, "c.json", ser.cochain_to_json(from_dual_coordinates(a4, D)))
    code, doc = run(["deform", a4_file, "--cocycle", cpath])
    assert code == 1 and doc["residuals"][1]["witness"] is not None


def test_downstream_commands_reject_non_filippov(tmp_path, a4):
    path = _write(tmp_path, "bad.json", _perturbed(a4))
    assert run(["cohomology", "--action", "trivial", "--degree", "1", path])[0] == 1


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["algebra", "simple", "--n", "3", "--signature", "++x+"],
    ["algebra", "simple", "--n", "3", "--signature", "+++"],
    ["check", "fi", "/nonexistent/a.json"],
    ["cohomology", "--action", "adjoint", "--degree", "7", "--bogus", "x.json"],
])
def test_input_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "filicoh:" in capsys.readouterr().err


def test_malformed_json_exit_two(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["check", "fi", str(path)]) == 2


def test_arity_mismatch_exit_two(tmp_path, a4, a5):
    p4 = _write(tmp_path, "a4.json", ser.algebra_to_json(a4))
    p5 = _write(tmp_path, "a5.json", ser.algebra_to_json(a5))
    assert run(["algebra", "sum", p4, p5])[0] == 2


def test_wrong_dimension_cochain_exit_two(tmp_path, a4, a5, a4_file):
    c = Cochain.random(a5, "trivial", 1, random.Random(0))
    cpath = _write(tmp_path, "c.json", ser.cochain_to_json(c))
    assert run(["extend", a4_file, "--cocycle", cpath])[0] == 2


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("FILICOH_SEED", "17")
    assert _seed(Namespace(seed=None)) == 17
    assert _seed(Namespace(seed=3)) == 3
    monkeypatch.setenv("FILICOH_SEED", "nope")
    assert run(["whitehead-suite", "--max-n", "3"])[0] == 2


def test_pretty_output(capsys):
    assert main(["algebra", "simple", "--n", "3", "--signature", "+++-", "--pretty"]) == 0
    out = capsys.readouterr().out
    assert "\n  " in out
    assert json.loads(out)["signature"] == [1, 1, 1, -1]


def test_outputs_are_byte_stable(capsys):
    main(["algebra", "simple", "--n", "4", "--signature", "+-+-+"])
    text = capsys.readouterr().out.strip()
    assert ser.dumps(json.loads(text)) == text
    assert ser.dumps(ser.algebra_to_json(ser.algebra_from_json(json.loads(text)))) == text


def test_rational_values_in_lowest_terms():
    assert ser._rat(Fraction(6, -4)) == {"num": -3, "den": 2}
