import csv
import io
import os
from fractions import Fraction
from pathlib import Path

import pytest

import relevance_kit as rk

FIX = Path(os.environ.get("RELEVANCE_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def xor():
    return rk.DecisionProblem(["0", "1"], [2, 2], [[0, 1, 1, 0], [1, 0, 0, 1]])


def test_version():
    assert rk.__version__ == "0.1.0"


def test_problem_accessors():
    p = rk.DecisionProblem(["a", "b"], [2], [["2", "1/3"], [Fraction(1, 2), 0]])
    assert p.num_states == 2
    assert p.utility(0, 1) == "1/3"
    assert p.utility(1, 0) == "1/2"
    assert p.opt(0) == [0]
    assert p.decode(1) == [1]
    assert "DecisionProblem" in repr(p)


def test_static_queries():
    p = xor()
    v = rk.check_sufficiency(p, [0])
    assert v["answer"] == "NO"
    assert v["witness"]["type"] == "state_pair"
    assert rk.check_sufficiency(p, [0, 1], strategy="pairwise")["answer"] == "YES"
    assert rk.relevant_coordinates(p) == [0, 1]
    assert rk.find_minimum(p, 1)["answer"] == "NO"
    assert rk.find_minimum(p, 2, mode="lattice")["answer"] == "YES"
    assert rk.check_anchor(p, [0])["answer"] == "NO"
    assert rk.structural_rank(p) == 2
    assert sorted(len(c) for c in rk.quotient(p)) == [2, 2]


def test_fixture_loading():
    p = rk.load_problem(str(FIX / "sufficient.json"))
    assert rk.check_sufficiency(p, [0, 2])["answer"] == "YES"
    with pytest.raises(ValueError):
        rk.load_problem(str(FIX / "bad_schema.json"))


def test_stochastic_worked_example():
    p = rk.DecisionProblem(["a", "b"], [2], [[2, 0], [1, 3]])
    sp = rk.StochasticProblem.uniform(p)
    assert rk.check_preservation(sp, [])["answer"] == "NO"
    assert rk.check_decisiveness(sp, [])["answer"] == "YES"
    sp2 = rk.load_stochastic(str(FIX / "static_not_stochastic.json"))
    assert rk.check_preservation(sp2, [0])["answer"] == "YES"
    assert rk.check_preservation(sp2, [0], strict=True)["answer"] == "NO"


def test_gadgets():
    text = (FIX / "taut.cnf").read_text()
    assert rk.gadget("tautology", text)["kind"] == "gadget"
    report = rk.verify_gadget("tautology", text)
    assert report["pass"]
    assert rk.is_tautology_threshold(text, 1)
    assert not rk.is_tautology_threshold((FIX / "not_taut.cnf").read_text(), 1)


def test_certify():
    p = xor()
    assert rk.certify(p, [], 4, query="minimum", k=2)["answer"] == "ABSTAIN"
    assert rk.certify(p, [], 100, query="minimum", k=2)["answer"] == "YES"


def test_externalized_and_translate():
    internal, external, ok = rk.externalized_relevance(xor(), [0])
    assert internal == [0] and external == [1] and not ok
    report = rk.translate("config", (FIX / "config.json").read_text())
    assert report["core"] == ["p2", "p3"]


def test_bench_csv():
    rows = list(csv.DictReader(io.StringIO(rk.bench_csv(max_n=2, seed=3))))
    assert rows and all(int(r["margin"]) >= 0 for r in rows)


def test_errors_map_to_python_types():
    with pytest.raises(ValueError):
        rk.DecisionProblem(["a"], [2], [[0]])
    with pytest.raises(IndexError):
        rk.check_sufficiency(xor(), [5])
