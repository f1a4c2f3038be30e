from __future__ import annotations

import itertools
import logging
from typing import Callable, Optional

from core.errors import ConstructionError, NonDeterministicMachine
from restriction.restricted import RestrictedWKAutomaton
from wk.automaton import StateId, Symbol, Transition, WKAutomaton, Word
from wk.classify import classify, find_nondeterministic_pair
from wk.naming import NameAllocator, chain_name

logger = logging.getLogger(__name__)

# (upper remainder, lower remainder, target) of a rule still being spelled out
Pending = tuple[Word, Word, StateId]


def to_one_limited(machine: RestrictedWKAutomaton, notes: Optional[list[str]] = None) -> RestrictedWKAutomaton:
    """
    Equivalent machine whose every rule reads exactly one symbol. The
    restriction object is carried over untouched.
    """
    core = one_limited_core(machine.core, notes)
    if core is machine.core:
        return machine
    return RestrictedWKAutomaton(core, machine.restriction)


def one_limited_core(machine: WKAutomaton, notes: Optional[list[str]] = None) -> WKAutomaton:
    notes = [] if notes is None else notes
    if classify(machine).one_limited:
        return machine
    pair = find_nondeterministic_pair(machine)
    if pair is not None:
        raise NonDeterministicMachine(f"cannot normalize: '{pair[0]}' and '{pair[1]}' overlap", pair)

    names = NameAllocator(machine.states)
    resolve, extra = _contract_empty_moves(machine, names, notes)
    kept = [state for state in machine.states if resolve(state) == state]
    # (state, state whose rules it carries); a copy carries its original's rules
    origins = [(state, state) for state in kept] + [(name, end) for name, end, _ in extra if end is not None]

    states: list[StateId] = list(kept)
    transitions: list[Transition] = []
    for state, origin in origins:
        if state not in kept:
            states.append(state)
        counter = itertools.count(1)

        def fresh(base: StateId = state) -> StateId:
            name = names.claim(chain_name(base, next(counter)))
            states.append(name)
            return name

        pending = [(rule.upper, rule.lower, resolve(rule.target)) for rule in machine.rules_from(origin)]
        if pending:
            _spell_out(state, pending, fresh, transitions)
    states += [name for name, end, _ in extra if end is None]

    finals = {state for state in kept if state in machine.finals}
    finals |= {name for name, _, final in extra if final}
    result = WKAutomaton(machine.alphabet, machine.rho, tuple(states), resolve(machine.start), finals, tuple(transitions))
    if find_nondeterministic_pair(result) is not None:
        raise ConstructionError("1-limited normal form lost determinism")
    logger.info(
        "1-limited form: %d states / %d rules -> %d states / %d rules",
        len(machine.states),
        len(machine.transitions),
        len(result.states),
        len(result.transitions),
    )
    return result


# (name, state whose rules it copies or None for a dead state, final)
Variant = tuple[StateId, Optional[StateId], bool]


def _contract_empty_moves(
    machine: WKAutomaton, names: NameAllocator, notes: list[str]
) -> tuple[Callable[[StateId], StateId], list[Variant]]:
    # A lambda/lambda rule is the only rule of its state, so that state always
    # passes straight through to the end of its chain. Reaching the chain with
    # both strands read accepts iff some state on it is final, so the end state
    # is swapped for a copy when its own finality differs.
    jump = {rule.source: rule.target for rule in machine.transitions if rule.width == 0}
    if not jump:
        return (lambda state: state), []

    extra: list[Variant] = []
    copies: dict[tuple[Optional[StateId], bool], StateId] = {}

    def variant(end: Optional[StateId], final: bool) -> StateId:
        if end is not None and final == (end in machine.finals):
            return end
        if (end, final) not in copies:
            name = names.claim("sink" if end is None else end)
            copies[(end, final)] = name
            extra.append((name, end, final))
        return copies[(end, final)]

    through: dict[StateId, StateId] = {}
    for state in jump:
        path: list[StateId] = []
        current = state
        while current in jump and current not in path:
            path.append(current)
            current = jump[current]
        final = any(s in machine.finals for s in path)
        if current in jump:
            through[state] = variant(None, final)
            notes.append(f"empty-move cycle from {state} replaced by dead state {through[state]}")
        else:
            through[state] = variant(current, final or current in machine.finals)
    notes.append(f"contracted {len(jump)} empty move(s)")
    return (lambda state: through.get(state, state)), extra


def _spell_out(
    node: StateId,
    pending: list[Pending],
    fresh: Callable[[], StateId],
    out: list[Transition],
) -> None:
    if any(not upper and not lower for upper, lower, _ in pending):
        raise ConstructionError(f"rules at {node} are not prefix-incomparable")

    # Upper first while every rule still has upper symbols left; otherwise
    # every rule has lower symbols left.
    on_upper = all(upper for upper, _, _ in pending)
    branches: dict[Symbol, list[Pending]] = {}
    for upper, lower, target in pending:
        if on_upper:
            branches.setdefault(upper[0], []).append((upper[1:], lower, target))
        else:
            branches.setdefault(lower[0], []).append((upper, lower[1:], target))

    for symbol, rest in branches.items():
        done = len(rest) == 1 and not rest[0][0] and not rest[0][1]
        target = rest[0][2] if done else fresh()
        upper, lower = ((symbol,), ()) if on_upper else ((), (symbol,))
        out.append(Transition(node, upper, lower, target))
        if not done:
            _spell_out(target, rest, fresh, out)
