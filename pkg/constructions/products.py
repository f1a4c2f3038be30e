from __future__ import annotations

import logging
from typing import Optional

from core.errors import ConstructionError, NotOneLimited, UnsupportedRestrictionClass
from pda.automaton import PDA, PDARule
from restriction.dfa import DFA
from restriction.language import RegularLanguage, UnaryRegularLanguage, kind_name
from restriction.restricted import RestrictedWKAutomaton
from wk.automaton import StateId, Transition, WKAutomaton
from wk.classify import classify, find_nondeterministic_pair
from wk.naming import NameAllocator, pair_name

logger = logging.getLogger(__name__)

UPPER_LEAD = "a"
LOWER_LEAD = "b"
BOTTOM = "$"


def _require_one_limited(machine: RestrictedWKAutomaton, construction: str) -> None:
    if not classify(machine.core).one_limited:
        raise NotOneLimited(f"{construction} needs a 1-limited machine; normalize it first")


def _pair_states(left: tuple[StateId, ...], right: tuple[StateId, ...]) -> dict[tuple[StateId, StateId], StateId]:
    names = NameAllocator()
    return {(q, p): names.claim(pair_name(q, p)) for q in left for p in right}


def product_with_dfa(machine: RestrictedWKAutomaton, notes: Optional[list[str]] = None) -> WKAutomaton:
    """
    Plain WK automaton over Q x Q' that runs the restriction DFA on the lower
    strand as it is read. Upper moves keep the DFA coordinate; lower moves step it.
    """
    notes = [] if notes is None else notes
    _require_one_limited(machine, "product with DFA")
    restriction = machine.restriction
    if not isinstance(restriction, (RegularLanguage, UnaryRegularLanguage)):
        raise UnsupportedRestrictionClass(
            f"product with DFA needs a regular restriction, got {kind_name(restriction)}"
        )
    dfa = restriction.dfa.completed(machine.alphabet)
    if len(dfa.states) > len(restriction.dfa.states):
        notes.append(f"restriction DFA completed with sink {dfa.states[-1]}")

    core = machine.core
    pairs = _pair_states(core.states, dfa.states)
    transitions: list[Transition] = []
    for rule in core.transitions:
        for p in dfa.states:
            if rule.upper:
                target = pairs[(rule.target, p)]
            else:
                target = pairs[(rule.target, dfa.delta[(p, rule.lower[0])])]
            transitions.append(Transition(pairs[(rule.source, p)], rule.upper, rule.lower, target))

    finals = {pairs[(q, p)] for q in core.finals for p in dfa.finals}
    result = WKAutomaton(
        core.alphabet, core.rho, tuple(pairs.values()), pairs[(core.start, dfa.start)], finals, tuple(transitions)
    )
    if find_nondeterministic_pair(result) is not None:
        raise ConstructionError("product with DFA is not deterministic")
    logger.info("product: %d x %d states -> %d rules", len(core.states), len(dfa.states), len(transitions))
    return result


def to_pda(machine: RestrictedWKAutomaton, notes: Optional[list[str]] = None) -> PDA:
    """
    Empty-stack PDA over Q x Q' for a unary restriction. The lower strand is
    forced to pad^|w|, so the PDA reads only the upper strand and keeps the
    head distance on the stack: `a`s while the upper head leads, `b`s while
    the lower head leads, `$` at the bottom.
    """
    notes = [] if notes is None else notes
    _require_one_limited(machine, "PDA construction")
    restriction = machine.restriction
    if not isinstance(restriction, UnaryRegularLanguage):
        raise UnsupportedRestrictionClass(f"PDA construction needs a unary restriction, got {kind_name(restriction)}")
    pad = restriction.symbol
    dfa: DFA = restriction.dfa.completed()

    core = machine.core
    pairs = _pair_states(core.states, dfa.states)
    rules: list[PDARule] = []
    for rule in core.transitions:
        if rule.upper:
            (x,) = rule.upper
            if not core.rho.relates(x, pad):
                notes.append(f"dropped {rule}: {x} has no complement {pad}")
                continue
            for k in dfa.states:
                source, target = pairs[(rule.source, k)], pairs[(rule.target, k)]
                rules += [
                    PDARule(source, x, UPPER_LEAD, target, (UPPER_LEAD, UPPER_LEAD)),
                    PDARule(source, x, BOTTOM, target, (BOTTOM, UPPER_LEAD)),
                    PDARule(source, x, LOWER_LEAD, target, ()),
                ]
        else:
            (y,) = rule.lower
            if y != pad:
                notes.append(f"dropped {rule}: lower strand only holds {pad}")
                continue
            for k in dfa.states:
                source, target = pairs[(rule.source, k)], pairs[(rule.target, dfa.delta[(k, pad)])]
                rules += [
                    PDARule(source, None, UPPER_LEAD, target, ()),
                    PDARule(source, None, BOTTOM, target, (BOTTOM, LOWER_LEAD)),
                    PDARule(source, None, LOWER_LEAD, target, (LOWER_LEAD, LOWER_LEAD)),
                ]
    for q in sorted(core.finals):
        for k in sorted(dfa.finals):
            state = pairs[(q, k)]
            rules.append(PDARule(state, None, BOTTOM, state, ()))

    pda = PDA(
        states=tuple(pairs.values()),
        input_alphabet=core.alphabet,
        stack_alphabet=(UPPER_LEAD, LOWER_LEAD, BOTTOM),
        start=pairs[(core.start, dfa.start)],
        initial_stack_symbol=BOTTOM,
        rules=tuple(rules),
        input_bound_symbol=LOWER_LEAD,
    )
    logger.info("PDA: %d x %d states, %d rules, %d note(s)", len(core.states), len(dfa.states), len(rules), len(notes))
    return pda
