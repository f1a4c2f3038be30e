from __future__ import annotations

import logging
from typing import Optional, Union

from constructions.lifting import lift_dfa, lift_to_restricted, stateless_identity
from constructions.normal_form import one_limited_core, to_one_limited
from constructions.products import product_with_dfa, to_pda
from constructions.report import ConstructionReport
from core.errors import ConstructionError, NonDeterministicMachine
from pda.automaton import PDA
from restriction.dfa import DFA
from restriction.language import RestrictionLanguage
from restriction.restricted import RestrictedWKAutomaton
from wk.automaton import WKAutomaton
from wk.classify import find_nondeterministic_pair

logger = logging.getLogger(__name__)

Machine = Union[WKAutomaton, RestrictedWKAutomaton, DFA, PDA, RestrictionLanguage]
TARGETS = ("1lim", "dwk", "pda", "restricted")


def to_dwk(machine: RestrictedWKAutomaton, notes: Optional[list[str]] = None) -> WKAutomaton:
    """Regular restriction folded into a plain deterministic WK automaton."""
    return product_with_dfa(to_one_limited(machine, notes), notes)


def to_unary_pda(machine: RestrictedWKAutomaton, notes: Optional[list[str]] = None) -> PDA:
    return to_pda(to_one_limited(machine, notes), notes)


def size_of(machine: Machine) -> tuple[int, int]:
    """(states, rules) of any machine kind; languages count as (0, 0)."""
    match machine:
        case RestrictedWKAutomaton(core=core):
            return len(core.states), len(core.transitions)
        case WKAutomaton():
            return len(machine.states), len(machine.transitions)
        case DFA():
            return len(machine.states), len(machine.delta)
        case PDA():
            return len(machine.states), len(machine.rules)
    return 0, 0


def convert(machine: Machine, target: str, pad: str = "a") -> tuple[Machine, ConstructionReport]:
    notes: list[str] = []
    match target, machine:
        case "1lim", RestrictedWKAutomaton():
            result = to_one_limited(machine, notes)
            name = "1-limited normal form"
        case "1lim", WKAutomaton():
            result = one_limited_core(machine, notes)
            name = "1-limited normal form"
        case "dwk", RestrictedWKAutomaton():
            result = to_dwk(machine, notes)
            name = "product with restriction DFA"
        case "dwk", WKAutomaton():
            pair = find_nondeterministic_pair(machine)
            if pair is not None:
                raise NonDeterministicMachine(f"'{pair[0]}' and '{pair[1]}' overlap", pair)
            result = machine
            name = "identity"
            notes.append("machine is already unrestricted")
        case "pda", RestrictedWKAutomaton():
            result = to_unary_pda(machine, notes)
            name = "empty-stack PDA"
        case "restricted", WKAutomaton():
            result = lift_to_restricted(machine)
            name = "lift with V* restriction"
        case "restricted", DFA():
            result = lift_dfa(machine, pad)
            name = "DFA lifted over unary restriction"
        case "restricted", (RestrictedWKAutomaton() | PDA()):
            raise ConstructionError(f"cannot convert a {type(machine).__name__} to a restricted machine")
        case "restricted", _:
            result = stateless_identity(machine)
            name = "stateless identity machine"
        case _:
            raise ConstructionError(f"cannot convert a {type(machine).__name__} to {target!r}")

    input_states, _ = size_of(machine)
    output_states, output_rules = size_of(result)
    report = ConstructionReport(name, input_states, output_states, output_rules, tuple(notes))
    logger.info("%s: %d -> %d states", name, input_states, output_states)
    return result, report
