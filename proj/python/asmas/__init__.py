"""Exact model checking of probabilistic rational temporal logic with trust."""

from fractions import Fraction

from . import _core
from ._core import Error, Model, load_model, load_model_text, normalize_formula, fragment

__all__ = [
    "Error",
    "Model",
    "load_model",
    "load_model_text",
    "check",
    "belief",
    "path_probability",
    "simulate",
    "normalize_formula",
    "fragment",
]


def check(model, formula, at=None, engine="auto", mode="path"):
    """Runs the checking pipeline; `value` is returned as a Fraction."""
    result = _core.check(model, formula, at, engine, mode)
    result["value"] = Fraction(result["value"])
    return result


def belief(model, agent, path):
    """The agent's belief over the observation class of `path`, keyed by path id."""
    return {p: Fraction(v) for p, v in _core.belief(model, agent, path).items()}


def path_probability(model, agent, path, cross_type=False):
    return Fraction(_core.path_probability(model, agent, path, cross_type))


def simulate(model, seed=0, steps=6):
    """State ids of one sampled execution."""
    return _core.simulate(model, seed, steps)
