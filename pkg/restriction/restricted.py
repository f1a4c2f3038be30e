from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from core.errors import NonDeterministicMachine
from restriction.language import RestrictionLanguage, membership
from wk.automaton import DoubleStrand, WKAutomaton, Word
from wk.classify import find_nondeterministic_pair
from wk.engine import complements, run_on_strands

logger = logging.getLogger(__name__)

__all__ = ["RestrictedWKAutomaton", "RestrictedVerdict", "complements", "evaluate", "restricted_accepts"]


@dataclass(frozen=True)
class RestrictedWKAutomaton:
    """A deterministic WK automaton whose lower strand must lie in `restriction`."""

    core: WKAutomaton
    restriction: RestrictionLanguage

    def __post_init__(self) -> None:
        pair = find_nondeterministic_pair(self.core)
        if pair is not None:
            first, second = pair
            raise NonDeterministicMachine(
                f"restricted machine needs a deterministic core; '{first}' and '{second}' overlap", pair
            )

    @property
    def alphabet(self):
        return self.core.alphabet

    @property
    def rho(self):
        return self.core.rho


@dataclass(frozen=True)
class RestrictedVerdict:
    accepted: bool
    # No complement of the word lies in L, so the machine never ran.
    rejected_before_run: bool
    witness: Optional[Word] = None


def evaluate(machine: RestrictedWKAutomaton, word: Word) -> RestrictedVerdict:
    """
    Scan complements lazily; only those in L are run. Stops at the first
    accepting lower strand.
    """
    word = tuple(word)
    any_in_language = False
    for lower in complements(machine.core.rho, word):
        if not membership(machine.restriction, lower):
            continue
        any_in_language = True
        if run_on_strands(machine.core, DoubleStrand(word, lower, machine.core.rho)):
            return RestrictedVerdict(True, False, lower)
    if not any_in_language:
        logger.debug("no complement of %s lies in the restriction", word)
    return RestrictedVerdict(False, not any_in_language)


def restricted_accepts(machine: RestrictedWKAutomaton, word: Word) -> bool:
    return evaluate(machine, word).accepted
