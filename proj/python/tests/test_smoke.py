from pathlib import Path

import pytest

import diffax

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def test_parse_and_tau():
    assert diffax.parse("x1*x1") == "x1^2"
    assert diffax.tau("x1^2") == "2*x1*y1"
    assert diffax.tau("t2*x1", field="rational_t") == "t2*y1 + x1"
    assert diffax.derive("x1^2", 1) == "2*x1*d1x1"


def test_reduce_certificate():
    c = diffax.reduce("d1d2x1*x1", ["d1x1 - t2"], m=2, field="rational_t")
    assert c["remainder"] == "x1"
    assert c["verified"]


def test_groebner_and_member():
    basis = diffax.groebner(["x1^2 - d1x1", "x1*d1x1"])
    assert basis
    assert diffax.member("x1^3", ["x1^2 - d1x1", "x1*d1x1"])
    assert not diffax.member("x1", ["x1^2"])


def test_certify_outcomes():
    assert diffax.certify(["d1x1 - 1", "d2x1"], m=2)["status"] == "certified"
    bad = diffax.certify(["d1x1 - t2", "d2x1"], m=2, field="rational_t")
    assert (bad["status"], bad["stage"]) == ("rejected", "coherence")
    assert diffax.certify(["x1^2"])["stage"] == "primality"


def test_witness_search():
    res = diffax.witness_search((FIXTURES / "basic.axiom").read_text())
    assert res["valid"] and res["status"] == "found"
    res = diffax.witness_search((FIXTURES / "exhaustion.axiom").read_text())
    assert res["status"] == "exhausted"


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        diffax.parse("x1 +")
    with pytest.raises(diffax.DiffaxError):
        diffax.tau("y1")
