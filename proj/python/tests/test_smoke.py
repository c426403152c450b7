from fractions import Fraction
from pathlib import Path

import pytest

import asmas

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


@pytest.fixture(scope="module")
def trust_game():
    return asmas.load_model(str(FIXTURES / "trust_game.json"))


def test_model_metadata(trust_game):
    assert trust_game.name == "trust_game"
    assert trust_game.agents == ["Alice", "Bob"]
    assert trust_game.size == 40
    assert "_sink" in trust_game.states
    assert trust_game.violations() == []


def test_path_probability(trust_game):
    assert asmas.path_probability(trust_game, "Alice", "s0 s1 s3 s8 s15 s24") == Fraction(9, 80)
    assert asmas.path_probability(trust_game, "Bob", "s0 s2 s5 s12 s19 s32", cross_type=True) == Fraction(3, 5)


def test_belief(trust_game):
    assert asmas.belief(trust_game, "Bob", "s0 s1") == {"s0s1": Fraction(1, 3), "s0s2": Fraction(2, 3)}


def test_check_values(trust_game):
    r = asmas.check(trust_game, "DT{Alice,Bob}>=? [ X (aBob=share) ]", at="s0 s2 s5 s12", engine="direct")
    assert r["numeric"] and r["value"] == Fraction(1, 2)
    r = asmas.check(trust_game, "CT{Alice,Bob}>=1 [ X (aBob=share) ]", at="s0 s2 s5 s12")
    assert r["truth"] and r["engine"] == "bounded"


def test_errors_carry_kind(trust_game):
    with pytest.raises(asmas.Error, match="fragment-error"):
        asmas.check(trust_game, "P>=1/2 [ activeAlice U profitBob ]")
    with pytest.raises(asmas.Error, match="parse-error"):
        asmas.normalize_formula("p &")


def test_simulation_is_deterministic(trust_game):
    assert asmas.simulate(trust_game, seed=7) == asmas.simulate(trust_game, seed=7)
    assert asmas.simulate(trust_game, seed=7)[0] == "s0"


def test_formula_helpers():
    assert asmas.normalize_formula("G p").startswith("A [")
    assert asmas.fragment("B{Alice}>=1/2 [ X p ]") == "BPRTL"
