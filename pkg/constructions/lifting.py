from __future__ import annotations

import logging
from typing import Iterable, Optional

from restriction.dfa import DFA
from restriction.language import RegularLanguage, RestrictionLanguage, UnaryRegularLanguage
from restriction.restricted import RestrictedWKAutomaton
from wk.automaton import ComplementarityRelation, Symbol, Transition, WKAutomaton

logger = logging.getLogger(__name__)


def lift_to_restricted(machine: WKAutomaton) -> RestrictedWKAutomaton:
    """Pair a deterministic machine with the restriction V*, which accepts every lower strand."""
    return RestrictedWKAutomaton(machine, RegularLanguage(DFA.universal(machine.alphabet)))


def lift_dfa(dfa: DFA, pad: Symbol = "a") -> RestrictedWKAutomaton:
    """
    Simulate `dfa` on the upper strand while the lower strand reads one `pad`
    per step. Every symbol complements to `pad` and the restriction is pad*.
    """
    alphabet = tuple(dict.fromkeys((*dfa.alphabet, pad)))
    rho = ComplementarityRelation(frozenset((x, pad) for x in alphabet))
    transitions = tuple(Transition(source, (symbol,), (pad,), target) for source, symbol, target in dfa.steps())
    core = WKAutomaton(alphabet, rho, dfa.states, dfa.start, dfa.finals, transitions)
    restriction = UnaryRegularLanguage(DFA.universal((pad,)))
    logger.info("lifted DFA with %d states over %d symbols (pad %s)", len(dfa.states), len(dfa.alphabet), pad)
    return RestrictedWKAutomaton(core, restriction)


def stateless_identity(
    language: RestrictionLanguage, alphabet: Optional[Iterable[Symbol]] = None, state: str = "q0"
) -> RestrictedWKAutomaton:
    """One accepting state copying each symbol to both strands; accepts exactly `language`."""
    alphabet = tuple(language.alphabet if alphabet is None else alphabet)
    transitions = tuple(Transition(state, (x,), (x,), state) for x in alphabet)
    core = WKAutomaton(alphabet, ComplementarityRelation.identity(alphabet), (state,), state, {state}, transitions)
    return RestrictedWKAutomaton(core, language)
