from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import load
from constructions.pipeline import to_unary_pda
from core.errors import DefinitionError, ResourceBound
from pda.automaton import PDA, PDARule
from pda.engine import default_max_stack, default_max_steps, pda_accepts
from reference import pda_derives
from restriction.language import UnaryRegularLanguage
from restriction.restricted import RestrictedWKAutomaton, restricted_accepts
from strategies import small_pdas, wk_machines


def all_words(alphabet, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def marked_mirror() -> PDA:
    """{ w c reverse(w) | w in {a, b}* }"""
    rules = [PDARule("push", x, top, "push", (top, x)) for x in "ab" for top in "Zab"]
    rules += [PDARule("push", "c", top, "pop", (top,)) for top in "Zab"]
    rules += [PDARule("pop", x, x, "pop", ()) for x in "ab"]
    rules.append(PDARule("pop", None, "Z", "pop", ()))
    return PDA(("push", "pop"), ("a", "b", "c"), ("Z", "a", "b"), "push", "Z", tuple(rules))


def only_empty_word() -> PDA:
    return PDA(("p",), ("a",), ("Z",), "p", "Z", (PDARule("p", None, "Z", "p", ()),))


def test_example1_pda(example1_pda):
    for word in ("ab", "aabb", "aaabbb"):
        assert pda_accepts(example1_pda, tuple(word)), word
    for word in ("", "a", "b", "ba", "aab", "abb", "abab"):
        assert not pda_accepts(example1_pda, tuple(word)), word


def test_marked_mirror():
    pda = marked_mirror()
    assert pda_accepts(pda, tuple("c"))
    assert pda_accepts(pda, tuple("abcba"))
    assert not pda_accepts(pda, tuple("abcab"))
    assert not pda_accepts(pda, tuple("ab"))


def test_only_empty_word():
    pda = only_empty_word()
    assert pda_accepts(pda, ())
    assert not pda_accepts(pda, ("a",))


def test_symbols_outside_the_input_alphabet_reject(example1_pda):
    assert not pda_accepts(example1_pda, tuple("abc"))


def test_rule_order_does_not_change_verdicts():
    pda = marked_mirror()
    flipped = PDA(pda.states, pda.input_alphabet, pda.stack_alphabet, pda.start, "Z", tuple(reversed(pda.rules)))
    for word in all_words(pda.input_alphabet, 5):
        assert pda_accepts(pda, word) == pda_accepts(flipped, word), word


@pytest.mark.slow
@settings(max_examples=50, deadline=None)
@given(small_pdas())
def test_search_matches_depth_first_reference(pda):
    # Every computation of these machines ends within 2|w| + 1 moves.
    for word in all_words(pda.input_alphabet, 6):
        expected = pda_derives(pda, word, 2 * len(word) + 1)
        assert pda_accepts(pda, word, max_steps=10**6) == expected, word


def test_stack_cap_is_a_resource_bound():
    growing = PDA(
        ("p",),
        ("a",),
        ("Z", "A"),
        "p",
        "Z",
        (PDARule("p", None, "Z", "p", ("Z", "A")), PDARule("p", None, "A", "p", ("A", "A"))),
    )
    with pytest.raises(ResourceBound) as info:
        pda_accepts(growing, ())
    assert info.value.word == ()
    assert "height" in info.value.reason


def test_step_cap_is_a_resource_bound(example1_pda):
    with pytest.raises(ResourceBound) as info:
        pda_accepts(example1_pda, tuple("aabb"), max_steps=1)
    assert info.value.word == tuple("aabb")


def test_default_caps(example1_pda):
    assert default_max_stack(tuple("ab")) == 4
    assert default_max_steps(example1_pda, tuple("ab")) == 10 * 4 * 12


@settings(max_examples=40, deadline=None)
@given(wk_machines())
def test_constructed_pdas_stay_within_default_caps(core):
    restricted = RestrictedWKAutomaton(core, UnaryRegularLanguage(load("a_plus.dfa")))
    pda = to_unary_pda(restricted)
    for word in all_words(core.alphabet, 6):
        assert pda_accepts(pda, word) == restricted_accepts(restricted, word), word


def test_rule_text():
    assert str(PDARule("p", None, "$", "q", ("$", "b"))) == "p - $ -> q $ b"
    assert str(PDARule("p", "a", "a", "q")) == "p a a -> q -"


def test_undeclared_stack_symbol_is_rejected():
    with pytest.raises(DefinitionError):
        PDA(("p",), ("a",), ("Z",), "p", "Z", (PDARule("p", "a", "Z", "p", ("X",)),))


def test_bound_symbol_must_be_a_stack_symbol():
    with pytest.raises(DefinitionError):
        PDA(("p",), ("a",), ("Z",), "p", "Z", (), input_bound_symbol="b")
