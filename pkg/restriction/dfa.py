from __future__ import annotations

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from core.errors import DefinitionError
from wk.automaton import StateId, Symbol, Word, check_symbol
from wk.naming import fresh_name

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DFA:
    """
    Deterministic finite automaton (Q', V', q0', F', delta'). `delta` may be
    partial; a missing step rejects, and `completed()` makes it total.
    """

    states: tuple[StateId, ...]
    alphabet: tuple[Symbol, ...]
    start: StateId
    finals: frozenset[StateId]
    delta: Mapping[tuple[StateId, Symbol], StateId] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", MappingProxyType(dict(self.delta)))
        self._validate()

    def _validate(self) -> None:
        for symbol in self.alphabet:
            check_symbol(symbol)
        for state in self.states:
            check_symbol(state, "state")
        if len(set(self.states)) != len(self.states) or len(set(self.alphabet)) != len(self.alphabet):
            raise DefinitionError("DFA declares a state or symbol twice")
        declared = set(self.states)
        if self.start not in declared:
            raise DefinitionError(f"DFA start state {self.start!r} is not declared")
        if not self.finals <= declared:
            raise DefinitionError(f"DFA final states {sorted(self.finals - declared)} are not declared")
        symbols = set(self.alphabet)
        for (source, symbol), target in self.delta.items():
            if source not in declared or target not in declared:
                raise DefinitionError(f"DFA step {source} {symbol} -> {target} uses an undeclared state")
            if symbol not in symbols:
                raise DefinitionError(f"DFA step {source} {symbol} -> {target} leaves the alphabet")

    @classmethod
    def universal(cls, alphabet: Iterable[Symbol], state: StateId = "s0") -> "DFA":
        """One accepting state with a self-loop on every symbol: V*."""
        alphabet = tuple(alphabet)
        return cls((state,), alphabet, state, frozenset({state}), {(state, x): state for x in alphabet})

    @classmethod
    def empty(cls, alphabet: Iterable[Symbol], state: StateId = "s0") -> "DFA":
        alphabet = tuple(alphabet)
        return cls((state,), alphabet, state, frozenset(), {(state, x): state for x in alphabet})

    @property
    def is_unary(self) -> bool:
        return len(self.alphabet) == 1

    @property
    def is_complete(self) -> bool:
        return all((q, x) in self.delta for q in self.states for x in self.alphabet)

    def step(self, state: StateId, symbol: Symbol) -> Optional[StateId]:
        return self.delta.get((state, symbol))

    def run(self, word: Word) -> Optional[StateId]:
        state: Optional[StateId] = self.start
        for symbol in word:
            state = self.step(state, symbol)
            if state is None:
                return None
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(tuple(word)) in self.finals

    def steps(self) -> Iterator[tuple[StateId, Symbol, StateId]]:
        """Defined steps in state-then-alphabet declaration order."""
        for state in self.states:
            for symbol in self.alphabet:
                target = self.delta.get((state, symbol))
                if target is not None:
                    yield state, symbol, target

    def completed(self, extra_symbols: Iterable[Symbol] = ()) -> "DFA":
        """
        Total DFA over alphabet + extra_symbols, routing every missing step to
        a fresh non-accepting sink. Returns self when nothing is missing.
        """
        alphabet = tuple(dict.fromkeys((*self.alphabet, *extra_symbols)))
        missing = [(q, x) for q in self.states for x in alphabet if (q, x) not in self.delta]
        if not missing:
            return self if alphabet == self.alphabet else DFA(
                self.states, alphabet, self.start, self.finals, self.delta
            )
        sink = fresh_name("sink", self.states)
        delta = dict(self.delta)
        delta.update({key: sink for key in missing})
        delta.update({(sink, x): sink for x in alphabet})
        logger.debug("completed DFA with sink %r (%d missing steps)", sink, len(missing))
        return DFA((*self.states, sink), alphabet, self.start, self.finals, delta)
