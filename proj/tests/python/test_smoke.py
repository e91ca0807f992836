import json
import os
from pathlib import Path

import pytest

import sdgon

FIXTURES = Path(os.environ.get("SDGON_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def load(name):
    return json.loads((FIXTURES / name).read_text())


@pytest.fixture
def banana():
    return load("banana_graph.json")


def test_g1_names_midpoints(banana):
    g = sdgon.g1(banana)
    assert sorted(g["vertices"]) == ["e1.m", "e2.m", "u", "v"]
    assert len(g["edges"]) == 4


def test_dgon(banana):
    r = sdgon.dgon(banana, 3, cross_check=True)
    assert r["value"] == 2
    assert not r["exceeded"]
    assert sdgon.dgon(banana, 1)["value"] is None


def test_sdgon_witness_round_trip(banana):
    r = sdgon.sdgon(banana, 3, 2)
    assert r["value"] == 2
    assert r["binding"] == ["l_max"]
    made = sdgon.make_cert(r["witness"])
    v = sdgon.verify(banana, made["certificate"], made["assignment"], base="g1", audit=True)
    assert v["accepted"], v


def test_worked_certificate(banana):
    cert = load("worked_certificate.json")
    solution = load("worked_solution.json")
    assert sdgon.validate(banana, cert) == []
    assert sdgon.verify(banana, cert, solution)["accepted"]
    assert sdgon.verify(banana, cert, solution, k=6)["stage"] == "degree"

    inst = sdgon.build_ilp(banana, cert)
    assert sdgon.check_assignment(inst, solution)
    assert sdgon.solve_ilp(inst, cap=100) == solution
    assert sdgon.solve_ilp(inst, cap=4) is None

    b = sdgon.magnitude_bound(inst)
    assert b["bound"] == b["n"] * (b["m"] * b["a"]) ** (2 * b["m"] + 1)

    out = sdgon.expand(banana, cert, solution)
    assert out["report"]["ok"]
    assert [sorted(s) for s in out["witness"]["scripts"]["v"]] == [sorted(s) for s in load("worked_sets.json")]


def test_errors(banana):
    with pytest.raises(sdgon.SdgonError):
        sdgon.dgon({"vertices": ["a", "b"], "edges": []}, 2)
    with pytest.raises(ValueError):
        sdgon.validate(banana, load("worked_certificate.json"), base="h")
