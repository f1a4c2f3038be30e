from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional, Sequence

from wk.automaton import Transition, WKAutomaton


def prefix_comparable(u: Sequence[str], v: Sequence[str]) -> bool:
    """True iff u is a prefix of v or v is a prefix of u."""
    shorter, longer = (u, v) if len(u) <= len(v) else (v, u)
    return tuple(longer[: len(shorter)]) == tuple(shorter)


@lru_cache(maxsize=512)
def find_nondeterministic_pair(machine: WKAutomaton) -> Optional[tuple[Transition, Transition]]:
    """First pair of co-located rules comparable on both strands, if any."""
    for state in machine.states:
        for first, second in itertools.combinations(machine.rules_from(state), 2):
            if prefix_comparable(first.upper, second.upper) and prefix_comparable(first.lower, second.lower):
                return first, second
    return None


def is_deterministic(machine: WKAutomaton) -> bool:
    return find_nondeterministic_pair(machine) is None


@dataclass(frozen=True)
class Classification:
    stateless: bool
    all_final: bool
    simple: bool
    one_limited: bool
    deterministic: bool
    strongly_deterministic: bool

    def flags(self) -> dict[str, bool]:
        return asdict(self)


def classify(machine: WKAutomaton) -> Classification:
    rules = machine.transitions
    deterministic = is_deterministic(machine)
    return Classification(
        stateless=len(machine.states) == 1 and machine.finals == {machine.start},
        all_final=machine.finals == frozenset(machine.states),
        simple=all(not rule.upper or not rule.lower for rule in rules),
        one_limited=all(rule.width == 1 for rule in rules),
        deterministic=deterministic,
        strongly_deterministic=deterministic and machine.rho.is_injective_function_on(machine.alphabet),
    )
