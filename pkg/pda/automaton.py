from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from core.errors import DefinitionError
from wk.automaton import StateId, Symbol, check_symbol


@dataclass(frozen=True)
class PDARule:
    """`(source, read, top) -> (target, push)`; read None is a lambda move."""

    source: StateId
    read: Optional[Symbol]
    top: Symbol
    target: StateId
    push: tuple[Symbol, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "push", tuple(self.push))

    def __str__(self) -> str:
        read = self.read if self.read is not None else "-"
        push = " ".join(self.push) or "-"
        return f"{self.source} {read} {self.top} -> {self.target} {push}"


@dataclass(frozen=True)
class PDA:
    """
    Pushdown automaton accepting by empty stack. The stack top is the last
    element; a push string "x y" leaves y on top.

    `input_bound_symbol` marks a stack symbol that only input-reading moves
    pop, so a configuration holding more of it than there is input left is dead.
    """

    states: tuple[StateId, ...]
    input_alphabet: tuple[Symbol, ...]
    stack_alphabet: tuple[Symbol, ...]
    start: StateId
    initial_stack_symbol: Symbol
    rules: tuple[PDARule, ...] = ()
    input_bound_symbol: Optional[Symbol] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "input_alphabet", tuple(self.input_alphabet))
        object.__setattr__(self, "stack_alphabet", tuple(self.stack_alphabet))
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))
        self._validate()

    def _validate(self) -> None:
        for state in self.states:
            check_symbol(state, "state")
        for symbol in (*self.input_alphabet, *self.stack_alphabet):
            check_symbol(symbol)
        declared = set(self.states)
        if self.start not in declared:
            raise DefinitionError(f"PDA start state {self.start!r} is not declared")
        stack = set(self.stack_alphabet)
        if self.initial_stack_symbol not in stack:
            raise DefinitionError(f"initial stack symbol {self.initial_stack_symbol!r} is not in the stack alphabet")
        if self.input_bound_symbol is not None and self.input_bound_symbol not in stack:
            raise DefinitionError(f"bound symbol {self.input_bound_symbol!r} is not in the stack alphabet")
        inputs = set(self.input_alphabet)
        for rule in self.rules:
            if rule.source not in declared or rule.target not in declared:
                raise DefinitionError(f"PDA rule {rule} uses an undeclared state")
            if rule.read is not None and rule.read not in inputs:
                raise DefinitionError(f"PDA rule {rule} reads an undeclared input symbol")
            if rule.top not in stack or any(s not in stack for s in rule.push):
                raise DefinitionError(f"PDA rule {rule} uses an undeclared stack symbol")

    @cached_property
    def _by_key(self) -> dict[tuple[StateId, Symbol], tuple[PDARule, ...]]:
        index: dict[tuple[StateId, Symbol], list[PDARule]] = {}
        for rule in self.rules:
            index.setdefault((rule.source, rule.top), []).append(rule)
        return {key: tuple(rules) for key, rules in index.items()}

    def rules_for(self, state: StateId, top: Symbol) -> tuple[PDARule, ...]:
        return self._by_key.get((state, top), ())


@dataclass(frozen=True)
class PDAConfiguration:
    state: StateId
    input_pos: int
    stack: tuple[Symbol, ...]
