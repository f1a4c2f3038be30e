from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import machine
from core.errors import DefinitionError, InvalidStrand, NonDeterministicMachine
from reference import strand_is_valid, wk_reaches_final
from strategies import relations, short_words, wk_machines
from wk.automaton import ComplementarityRelation, DoubleStrand, Transition, WKConfiguration, format_word
from wk.classify import classify, is_deterministic, prefix_comparable
from wk.engine import (
    Outcome,
    applicable_transitions,
    check_weak_determinism_bounded,
    complements,
    find_weak_nondeterminism,
    run_on_strands,
    trace_run,
    wk_accepts,
)
from wk.naming import NameAllocator, fresh_name


def strand(upper: str, lower: str, rho) -> DoubleStrand:
    return DoubleStrand(tuple(upper), tuple(lower), rho)


# Prefix comparability ------------------------------------------------------


@pytest.mark.parametrize(
    "u, v, expected",
    [((), tuple("abc"), True), (tuple("ab"), tuple("abc"), True), (tuple("ab"), tuple("ac"), False), ((), (), True)],
)
def test_prefix_comparable(u, v, expected):
    assert prefix_comparable(u, v) is expected
    assert prefix_comparable(v, u) is expected


# Determinism and classification --------------------------------------------


def test_example1_is_deterministic(example1):
    assert is_deterministic(example1.core)


def test_overlapping_upper_words_are_nondeterministic():
    m = machine([("q0", "a", "", "p"), ("q0", "ab", "", "r")], finals=())
    assert not is_deterministic(m)


def test_distinct_first_symbols_are_deterministic():
    m = machine([("q0", "a", "", "p"), ("q0", "b", "", "r")], finals=())
    assert is_deterministic(m)


def test_classify_example1(example1):
    flags = classify(example1.core).flags()
    # q0 (b / a a) reads both strands, so the machine is not simple.
    assert flags == {
        "stateless": False,
        "all_final": False,
        "simple": False,
        "one_limited": False,
        "deterministic": True,
        "strongly_deterministic": False,
    }


def test_classify_identity_machine():
    m = machine([("q0", "a", "a", "q0")], alphabet=("a",), finals=("q0",))
    c = classify(m)
    assert c.stateless and c.all_final and c.deterministic and c.strongly_deterministic
    assert not c.simple and not c.one_limited


def test_classify_machine_without_rules():
    m = machine([], alphabet=("a",), finals=("q0",))
    c = classify(m)
    assert c.stateless and c.all_final and c.simple and c.one_limited and c.deterministic


def test_strong_determinism_needs_total_injective_rho():
    partial = ComplementarityRelation.from_mapping({"a": "a"})
    m = machine([("q0", "a", "", "qf")], rho=partial)
    assert classify(m).deterministic
    assert not classify(m).strongly_deterministic
    swap = ComplementarityRelation.from_mapping({"a": "b", "b": "a"})
    assert classify(machine([("q0", "a", "", "qf")], rho=swap)).strongly_deterministic


@settings(max_examples=60, deadline=None)
@given(wk_machines(deterministic=False))
def test_classification_implications(m):
    c = classify(m)
    if c.one_limited:
        assert c.simple
    if c.strongly_deterministic:
        assert c.deterministic


# Definitions -----------------------------------------------------------------


def test_undeclared_state_is_rejected():
    with pytest.raises(DefinitionError):
        machine([("q0", "a", "", "qz")], states=("q0", "qf"))


def test_rho_outside_alphabet_is_rejected():
    with pytest.raises(DefinitionError):
        machine([], rho=ComplementarityRelation.from_mapping({"a": "z"}))


def test_double_strand_rejects_length_mismatch():
    rho = ComplementarityRelation.identity("ab")
    with pytest.raises(InvalidStrand):
        strand("ab", "a", rho)


def test_double_strand_reports_first_bad_position():
    rho = ComplementarityRelation.identity("ab")
    with pytest.raises(InvalidStrand) as info:
        strand("aab", "abb", rho)
    assert info.value.position == 1


@settings(max_examples=150, deadline=None)
@given(relations(), short_words(max_size=4), short_words(max_size=4))
def test_double_strand_matches_pointwise_check(rho, upper, lower):
    valid = strand_is_valid(upper, lower, rho)
    try:
        DoubleStrand(upper, lower, rho)
    except InvalidStrand:
        assert not valid
    else:
        assert valid


# Applicable transitions and runs ---------------------------------------------


def test_applicable_transitions_on_example1(example1):
    core = example1.core
    s = strand("aabb", "aaaa", core.rho)
    assert [str(r) for r in applicable_transitions(core, s, WKConfiguration("q0"))] == ["q0 (a / -) -> q0"]
    assert [str(r) for r in applicable_transitions(core, s, WKConfiguration("q0", 2, 0))] == ["q0 (b / a a) -> qf"]
    assert applicable_transitions(core, s, WKConfiguration("qf", 4, 4)) == []


def test_applicable_transitions_rejects_positions_past_the_end(example1):
    s = strand("ab", "aa", example1.core.rho)
    with pytest.raises(ValueError):
        applicable_transitions(example1.core, s, WKConfiguration("q0", 3, 0))


def test_run_on_example1(example1):
    core = example1.core
    assert run_on_strands(core, strand("aabb", "aaaa", core.rho))
    assert not run_on_strands(core, strand("aab", "aaa", core.rho))


def test_halted_run_reports_where_it_stopped(example1):
    core = example1.core
    trace = trace_run(core, strand("aab", "aaa", core.rho))
    assert trace.outcome is Outcome.HALT
    assert trace.final == WKConfiguration("qf", 3, 2)
    assert len(trace.steps) == 3


def test_empty_strand_accepts_iff_start_is_final():
    rho = ComplementarityRelation.identity("ab")
    assert run_on_strands(machine([], finals=("q0",)), DoubleStrand((), (), rho))
    assert not run_on_strands(machine([], finals=("qf",)), DoubleStrand((), (), rho))


def test_empty_move_cycle_is_a_stall():
    m = machine([("q0", "", "", "q1"), ("q1", "", "", "q0")], finals=("qf",))
    trace = trace_run(m, DoubleStrand((), (), m.rho))
    assert trace.outcome is Outcome.STALL
    assert not trace.accepted


def test_final_state_on_an_empty_move_cycle_accepts():
    m = machine([("q0", "", "", "q1"), ("q1", "", "", "q0")], finals=("q1",))
    trace = trace_run(m, DoubleStrand((), (), m.rho))
    assert trace.outcome is Outcome.ACCEPT
    assert trace.final == WKConfiguration("q1")


def test_final_start_state_accepts_the_empty_strand_before_an_empty_move():
    m = machine([("q0", "", "", "p")], finals=("q0",))
    trace = trace_run(m, DoubleStrand((), (), m.rho))
    assert trace.accepted and trace.steps == ()


def test_run_accepts_before_a_trailing_empty_move():
    m = machine([("q0", "a", "a", "qf"), ("qf", "", "", "p")])
    trace = trace_run(m, strand("a", "a", m.rho))
    assert trace.accepted
    assert trace.final == WKConfiguration("qf", 1, 1)
    assert len(trace.steps) == 1
    # Mid-strand the empty move still fires.
    assert not run_on_strands(m, strand("aa", "aa", m.rho))


@settings(max_examples=80, deadline=None)
@given(wk_machines(), short_words(max_size=4))
def test_run_matches_reachability_of_an_accepting_configuration(m, upper):
    for lower in itertools.islice(complements(m.rho, upper), 4):
        assert run_on_strands(m, DoubleStrand(upper, lower, m.rho)) == wk_reaches_final(m, upper, lower)


def test_empty_move_to_final_state_accepts():
    m = machine([("q0", "", "", "qf")])
    assert run_on_strands(m, DoubleStrand((), (), m.rho))


def test_run_refuses_nondeterministic_machine():
    m = machine([("q0", "a", "", "qf"), ("q0", "a", "a", "qf")])
    with pytest.raises(NonDeterministicMachine) as info:
        run_on_strands(m, strand("a", "a", m.rho))
    assert info.value.pair is not None


def test_run_checks_strand_against_machine_rho():
    m = machine([("q0", "a", "a", "qf")], rho=ComplementarityRelation.from_mapping({"a": "a", "b": "b"}))
    other = ComplementarityRelation.from_mapping({"a": "b"})
    with pytest.raises(InvalidStrand):
        run_on_strands(m, strand("a", "b", other))


@settings(max_examples=60, deadline=None)
@given(wk_machines(), short_words(max_size=4))
def test_runs_are_pure_and_bounded(m, upper):
    for lower in itertools.islice(complements(m.rho, upper), 4):
        s = DoubleStrand(upper, lower, m.rho)
        first, second = trace_run(m, s), trace_run(m, s)
        assert first == second
        productive = [step for step in first.steps if step.rule.width > 0]
        assert len(productive) <= 2 * len(upper)
        # Empty moves never repeat a configuration, so they are bounded by the state count.
        assert len(first.steps) - len(productive) <= (len(productive) + 1) * len(m.states)


def test_wk_acceptance_tries_every_complement():
    rho = ComplementarityRelation.from_mapping({"a": ("x", "y"), "x": "x", "y": "y"})
    m = machine([("q0", "a", "y", "qf")], alphabet=("a", "x", "y"), rho=rho)
    assert wk_accepts(m, ("a",))
    assert not wk_accepts(m, ("x",))


# Weak determinism --------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(wk_machines())
def test_static_determinism_implies_weak_determinism(m):
    assert check_weak_determinism_bounded(m, 4)


def test_weak_nondeterminism_witness():
    m = machine([("q0", "a", "", "p"), ("q0", "a", "a", "r")], finals=())
    witness = find_weak_nondeterminism(m, 2)
    assert witness is not None
    assert witness.strand.upper == ("a",) and witness.config == WKConfiguration("q0")
    assert len(witness.rules) == 2
    assert not check_weak_determinism_bounded(m, 1)


def test_disjoint_first_symbols_are_weakly_deterministic():
    m = machine([("q0", "a", "", "p"), ("q0", "b", "", "r")], finals=())
    assert all(check_weak_determinism_bounded(m, n) for n in range(5))


def test_unreachable_overlap_is_weakly_deterministic():
    # Both rules need a lower b but the complement of a is always a.
    rho = ComplementarityRelation.from_mapping({"a": "a", "b": "b"})
    m = machine([("q0", "a", "b", "p"), ("q0", "a", ("b", "b"), "r")], rho=rho, finals=())
    assert not is_deterministic(m)
    assert check_weak_determinism_bounded(m, 4)


# Helpers ---------------------------------------------------------------------------


def test_complements_examples():
    example_rho = ComplementarityRelation.from_mapping({"a": "a", "b": "a"})
    assert list(complements(example_rho, tuple("aabb"))) == [tuple("aaaa")]
    assert list(complements(example_rho, ())) == [()]
    multi = ComplementarityRelation.from_mapping({"a": ("x", "y")})
    assert list(complements(multi, tuple("aa"))) == [tuple(p) for p in ("xx", "xy", "yx", "yy")]
    assert list(complements(multi, tuple("ab"))) == []


def test_fresh_names_avoid_taken_names():
    assert fresh_name("q", {"q", "q'"}) == "q''"
    names = NameAllocator({"sink"})
    assert names.claim("sink") == "sink'"
    assert names.claim("sink") == "sink''"


def test_format_word():
    assert format_word(()) == "-"
    assert format_word(tuple("ab")) == "ab"
    assert format_word(("q0", "q1")) == "q0 q1"


def test_transition_str():
    assert str(Transition("q", ("a",), (), "p")) == "q (a / -) -> p"
