from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Callable, Iterable, Optional

from core.config import EngineConfig
from pda.automaton import PDA
from pda.engine import pda_accepts
from restriction.dfa import DFA
from restriction.language import RestrictionLanguage, membership, with_budget
from restriction.restricted import RestrictedWKAutomaton, restricted_accepts
from wk.automaton import Symbol, WKAutomaton, Word
from wk.engine import wk_accepts


class AcceptorKind(str, Enum):
    WK = "wk"
    RESTRICTED_WK = "restricted-wk"
    DFA = "dfa"
    PDA = "pda"
    PREDICATE = "predicate"


@dataclass(frozen=True)
class Acceptor:
    kind: AcceptorKind
    alphabet: tuple[Symbol, ...]
    accepts: Callable[[Word], bool]
    name: str = ""

    def __call__(self, word: Iterable[Symbol]) -> bool:
        return self.accepts(tuple(word))


def predicate_acceptor(alphabet: Iterable[Symbol], predicate: Callable[[Word], bool], name: str = "predicate") -> Acceptor:
    return Acceptor(AcceptorKind.PREDICATE, tuple(alphabet), predicate, name)


def as_acceptor(machine: object, engine: Optional[EngineConfig] = None, name: str = "") -> Acceptor:
    """Wrap any machine kind, or a restriction language, as an Acceptor."""
    engine = engine or EngineConfig()
    match machine:
        case RestrictedWKAutomaton():
            budgeted = RestrictedWKAutomaton(machine.core, with_budget(machine.restriction, engine.cs_budget))
            return Acceptor(AcceptorKind.RESTRICTED_WK, machine.alphabet, partial(restricted_accepts, budgeted), name)
        case WKAutomaton():
            return Acceptor(AcceptorKind.WK, machine.alphabet, partial(wk_accepts, machine), name)
        case DFA():
            return Acceptor(AcceptorKind.DFA, machine.alphabet, machine.accepts, name)
        case PDA():
            accepts = partial(pda_accepts, machine, max_stack=engine.max_stack, max_steps=engine.max_steps)
            return Acceptor(AcceptorKind.PDA, machine.input_alphabet, accepts, name)
    language: RestrictionLanguage = with_budget(machine, engine.cs_budget)  # type: ignore[arg-type]
    return predicate_acceptor(language.alphabet, partial(membership, language), name or "membership")
