from __future__ import annotations

from pathlib import Path

import pytest

from cli.document import load_document
from restriction.dfa import DFA
from wk.automaton import ComplementarityRelation, Transition, WKAutomaton

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load(name: str):
    return load_document(fixture_path(name)).machine


def machine(rules, alphabet=("a", "b"), rho=None, start="q0", finals=("qf",), states=None) -> WKAutomaton:
    """Build a WK automaton from (source, upper, lower, target) tuples; strings split into symbols."""
    transitions = tuple(Transition(s, tuple(u), tuple(l), t) for s, u, l, t in rules)
    if states is None:
        seen = dict.fromkeys([start, *finals, *(x for r in transitions for x in (r.source, r.target))])
        states = tuple(seen)
    rho = rho if rho is not None else ComplementarityRelation.identity(alphabet)
    return WKAutomaton(tuple(alphabet), rho, tuple(states), start, frozenset(finals), transitions)


def dfa(states, alphabet, start, finals, steps) -> DFA:
    return DFA(tuple(states), tuple(alphabet), start, frozenset(finals), {(s, x): t for s, x, t in steps})


@pytest.fixture
def example1():
    return load("example1.rwk")


@pytest.fixture
def example2():
    return load("example2.rwk")


@pytest.fixture
def example1_pda():
    return load("example1.pda")
