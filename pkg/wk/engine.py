from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from core.errors import InvalidStrand, NonDeterministicMachine
from wk.automaton import (
    ComplementarityRelation,
    DoubleStrand,
    Transition,
    WKAutomaton,
    WKConfiguration,
    Word,
)
from wk.classify import find_nondeterministic_pair

logger = logging.getLogger(__name__)


def complements(rho: ComplementarityRelation, upper: Word) -> Iterator[Word]:
    """
    Lazily yield every lower strand pointwise related to `upper`, in
    lexicographic order of lower symbols. Yields nothing when some symbol has
    no complement, and exactly one empty word for an empty `upper`.
    """
    choices = [rho.complements_of(symbol) for symbol in upper]
    if any(not options for options in choices):
        return iter(())
    return itertools.product(*choices)


class Outcome(str, Enum):
    ACCEPT = "accept"
    HALT = "halt"  # no rule applies and the configuration is not accepting
    STALL = "stall"  # a configuration repeated through lambda/lambda rules


@dataclass(frozen=True)
class RunStep:
    config: WKConfiguration
    rule: Transition


@dataclass(frozen=True)
class RunTrace:
    strand: DoubleStrand
    steps: tuple[RunStep, ...]
    final: WKConfiguration
    outcome: Outcome

    @property
    def accepted(self) -> bool:
        return self.outcome is Outcome.ACCEPT


def applicable_transitions(
    machine: WKAutomaton, strand: DoubleStrand, config: WKConfiguration
) -> list[Transition]:
    """Rules of the current state whose words prefix the unread suffixes."""
    size = len(strand)
    if not (0 <= config.upper_pos <= size and 0 <= config.lower_pos <= size):
        raise ValueError(f"configuration {config} lies outside a strand of length {size}")
    upper_rest = strand.upper[config.upper_pos :]
    lower_rest = strand.lower[config.lower_pos :]
    return [
        rule
        for rule in machine.rules_from(config.state)
        if upper_rest[: len(rule.upper)] == rule.upper and lower_rest[: len(rule.lower)] == rule.lower
    ]


def _advance(config: WKConfiguration, rule: Transition) -> WKConfiguration:
    return WKConfiguration(
        rule.target,
        config.upper_pos + len(rule.upper),
        config.lower_pos + len(rule.lower),
    )


def _require_deterministic(machine: WKAutomaton) -> None:
    pair = find_nondeterministic_pair(machine)
    if pair is not None:
        first, second = pair
        raise NonDeterministicMachine(f"rules '{first}' and '{second}' are prefix comparable on both strands", pair)


def _check_strand(machine: WKAutomaton, strand: DoubleStrand) -> None:
    if strand.rho == machine.rho:
        return
    for i, (upper, lower) in enumerate(zip(strand.upper, strand.lower)):
        if not machine.rho.relates(upper, lower):
            raise InvalidStrand(f"({upper}, {lower}) at position {i} is not in the machine's rho", position=i)


def trace_run(machine: WKAutomaton, strand: DoubleStrand) -> RunTrace:
    """
    Drive the unique applicable rule from (q0, 0, 0). The run accepts at the
    first configuration in F with both strands read, even when a lambda/lambda
    rule could still move it on. A repeated configuration is a stall and rejects.
    """
    _require_deterministic(machine)
    _check_strand(machine, strand)

    size = len(strand)
    config = WKConfiguration(machine.start)
    seen = {config}
    steps: list[RunStep] = []
    while not _accepting(machine, config, size):
        rules = applicable_transitions(machine, strand, config)
        if not rules:
            return RunTrace(strand, tuple(steps), config, Outcome.HALT)
        rule = rules[0]
        steps.append(RunStep(config, rule))
        config = _advance(config, rule)
        if config in seen:
            logger.debug("stall at %s after %d steps", config, len(steps))
            return RunTrace(strand, tuple(steps), config, Outcome.STALL)
        seen.add(config)
    return RunTrace(strand, tuple(steps), config, Outcome.ACCEPT)


def _accepting(machine: WKAutomaton, config: WKConfiguration, size: int) -> bool:
    return config.upper_pos == size and config.lower_pos == size and config.state in machine.finals


def run_on_strands(machine: WKAutomaton, strand: DoubleStrand) -> bool:
    return trace_run(machine, strand).accepted


def wk_accepts(machine: WKAutomaton, word: Word) -> bool:
    """Unrestricted acceptance: some complement in V* drives an accepting run."""
    word = tuple(word)
    return any(
        run_on_strands(machine, DoubleStrand(word, lower, machine.rho))
        for lower in complements(machine.rho, word)
    )


@dataclass(frozen=True)
class WeakNondeterminism:
    strand: DoubleStrand
    config: WKConfiguration
    rules: tuple[Transition, ...]


def find_weak_nondeterminism(machine: WKAutomaton, max_len: int) -> Optional[WeakNondeterminism]:
    """
    Search every valid strand with |upper| <= max_len for a reachable
    configuration where two rules apply. Bounded semi-decision only.
    """
    for length in range(max_len + 1):
        for upper in itertools.product(machine.alphabet, repeat=length):
            for lower in complements(machine.rho, upper):
                witness = _explore(machine, DoubleStrand(upper, lower, machine.rho))
                if witness is not None:
                    return witness
    return None


def check_weak_determinism_bounded(machine: WKAutomaton, max_len: int) -> bool:
    return find_weak_nondeterminism(machine, max_len) is None


def _explore(machine: WKAutomaton, strand: DoubleStrand) -> Optional[WeakNondeterminism]:
    start = WKConfiguration(machine.start)
    frontier = deque([start])
    seen = {start}
    while frontier:
        config = frontier.popleft()
        rules = applicable_transitions(machine, strand, config)
        if len(rules) > 1:
            return WeakNondeterminism(strand, config, tuple(rules))
        for rule in rules:
            nxt = _advance(config, rule)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return None
