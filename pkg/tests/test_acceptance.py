"""The fourteen acceptance criteria, one test each.

Every test prints a ``[PASS]``/``[FAIL]`` line; the lines are repeated in
the terminal summary.  All comparisons are exact: the library never uses
floating point, so the only admissible tolerance is zero.
"""

from __future__ import annotations

import json

import pytest

from filicoh import serialize as ser
from filicoh.cli import main
from filicoh.suite import Algebras, CriterionResult, run_criterion

SEED = 0
MAX_N = 5


@pytest.fixture(scope="module")
def algebras():
    return Algebras()


@pytest.fixture
def criterion(algebras, acceptance_lines):
    def go(number):
        result = run_criterion(number, seed=SEED, max_n=MAX_N, algebras=algebras)
        print(result.line())
        acceptance_lines.append(result.line())
        return result
    return go


def test_criterion_01_filippov_identity(criterion):
    r = criterion(1)
    assert r.passed, r.detail
    assert r.detail["checks"] == 16 + 2


def test_criterion_02_fundamental_identities(criterion):
    r = criterion(2)
    assert r.passed, r.detail
    assert r.detail["A4_exhaustive"]["failures"] == {}
    assert r.detail["A4+A4_random"]["checked"]["composition"] == 200


def test_criterion_03_coboundary_nilpotent(criterion):
    r = criterion(3)
    assert r.passed, r.detail
    assert len(r.detail["failures"]) == 8
    assert set(r.detail["failures"].values()) == {0}


def test_criterion_04_trivial_whitehead(criterion):
    r = criterion(4)
    assert r.passed, r.detail
    assert r.detail["dims"] == {"A4": [4, 4, 0], "A5": [5, 5, 0], "A6": [6, 6, 0], "A4+A4": [8, 8, 0]}


def test_criterion_05_adjoint_whitehead(criterion):
    r = criterion(5)
    assert r.passed, r.detail
    assert r.detail["A4"] == {"dims": [10, 10, 0], "symmetric_dual_count": 10}
    assert r.detail["A5"] == {"dims": [15, 15, 0], "symmetric_dual_count": 15}
    assert r.detail["A4+A4"]["dims"][2] == 0


def test_criterion_06_symmetric_dual_coordinates(criterion):
    r = criterion(6)
    assert r.passed, r.detail
    assert r.detail["disagreements"] == 0


def test_criterion_07_killing_contrast(criterion):
    r = criterion(7)
    assert r.passed, r.detail
    assert (r.detail["A4+A4_rank"], r.detail["A4+A4_nullity"]) == (12, 16)
    assert r.detail["A4_gram_is_minus_2I"] and r.detail["kasymov_nondegenerate"]


def test_criterion_08_associated_lie_algebra(criterion):
    r = criterion(8)
    assert r.passed, r.detail
    assert r.detail["euclidean"]["dim"] == r.detail["lorentz"]["dim"] == 6
    assert r.detail["euclidean"]["killing_negative_definite"]


def test_criterion_09_trivializers(criterion):
    r = criterion(9)
    assert r.passed, r.detail
    assert r.detail["verified"] == {"A4 trivial": 100, "A5 trivial": 100, "A4 adjoint": 100,
                                    "A4+A4 trivial": 50, "A4+A4 adjoint": 50}


def test_criterion_10_central_extensions(criterion):
    r = criterion(10)
    assert r.passed, r.detail
    assert r.detail["extensions_pass_fi"] == r.detail["trivialized"] == 4
    assert r.detail["nilpotent_noncocycle_witness"]["x"] == [1, 2]


def test_criterion_11_deformations(criterion):
    r = criterion(11)
    assert r.passed, r.detail
    assert r.detail["order1_vanishes"] == r.detail["recovered_mod_t2"] == 10
    assert r.detail["gamma_closed"] == 100


def test_criterion_12_abelian_not_rigid(criterion):
    r = criterion(12)
    assert r.passed, r.detail
    assert r.detail["dims"] == [16, 0, 16]


def test_criterion_13_leibniz_layer(criterion):
    r = criterion(13)
    assert r.passed, r.detail
    assert r.detail["dim"] == 28


def test_criterion_14_whitehead_suite_command(capsys, acceptance_lines):
    code = main(["whitehead-suite", "--seed", str(SEED), "--max-n", str(MAX_N)])
    text = capsys.readouterr().out.strip()
    doc = json.loads(text)
    # the emitted report is itself canonical JSON
    stable = ser.dumps(doc) == text
    passed = code == 0 and doc["passed"] and doc["roundtrip"]["passed"] and stable
    seconds = sum(c["seconds"] for c in doc["criteria"])
    line = CriterionResult(14, "whitehead-suite exits 0 with byte-stable JSON", passed, seconds=seconds).line()
    print(line)
    acceptance_lines.append(line)
    assert code == 0
    assert [c["number"] for c in doc["criteria"]] == list(range(1, 14))
    assert all(c["passed"] for c in doc["criteria"])
    assert doc["roundtrip"] == {"passed": True, "artifacts": 15, "failures": []}
    assert stable
