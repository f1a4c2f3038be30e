from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Union

from core.errors import DefinitionError, InvalidStrand

Symbol = str
StateId = str
Word = tuple[Symbol, ...]

LAMBDA: Word = ()


def as_word(symbols: Union[str, Iterable[Symbol]]) -> Word:
    """
    Build a word. A plain string is read as a run of single-character
    symbols ("aabb" -> a a b b); any other iterable is taken token by token.
    """
    return tuple(symbols)


def format_word(word: Word) -> str:
    if not word:
        return "-"
    if all(len(symbol) == 1 for symbol in word):
        return "".join(word)
    return " ".join(word)


def check_symbol(symbol: object, what: str = "symbol") -> None:
    if not isinstance(symbol, str) or not symbol:
        raise DefinitionError(f"{what} must be a non-empty string, got {symbol!r}")
    if not symbol.isprintable() or any(ch.isspace() for ch in symbol):
        raise DefinitionError(f"{what} {symbol!r} must be printable without whitespace")


@dataclass(frozen=True)
class ComplementarityRelation:
    """The relation rho between upper-strand and lower-strand symbols."""

    pairs: frozenset[tuple[Symbol, Symbol]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset((u, l) for u, l in self.pairs))

    @classmethod
    def identity(cls, alphabet: Iterable[Symbol]) -> "ComplementarityRelation":
        return cls(frozenset((x, x) for x in alphabet))

    @classmethod
    def from_mapping(cls, mapping: Mapping[Symbol, Union[Symbol, Iterable[Symbol]]]) -> "ComplementarityRelation":
        pairs = set()
        for upper, lowers in mapping.items():
            if isinstance(lowers, str):
                lowers = (lowers,)
            pairs.update((upper, lower) for lower in lowers)
        return cls(frozenset(pairs))

    @cached_property
    def _lowers(self) -> dict[Symbol, tuple[Symbol, ...]]:
        index: dict[Symbol, list[Symbol]] = {}
        for upper, lower in self.pairs:
            index.setdefault(upper, []).append(lower)
        return {upper: tuple(sorted(lowers)) for upper, lowers in index.items()}

    def relates(self, upper: Symbol, lower: Symbol) -> bool:
        return (upper, lower) in self.pairs

    def complements_of(self, upper: Symbol) -> tuple[Symbol, ...]:
        """Lower symbols paired with `upper`, in lexicographic order."""
        return self._lowers.get(upper, ())

    def is_function_on(self, alphabet: Iterable[Symbol]) -> bool:
        return all(len(self.complements_of(x)) == 1 for x in alphabet)

    def is_injective_function_on(self, alphabet: Iterable[Symbol]) -> bool:
        alphabet = tuple(alphabet)
        if not self.is_function_on(alphabet):
            return False
        images = [self.complements_of(x)[0] for x in alphabet]
        return len(set(images)) == len(images)


@dataclass(frozen=True)
class Transition:
    """A rule `source (upper / lower) -> target`; either word may be empty."""

    source: StateId
    upper: Word
    lower: Word
    target: StateId

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))

    @property
    def width(self) -> int:
        return len(self.upper) + len(self.lower)

    def __str__(self) -> str:
        upper = " ".join(self.upper) or "-"
        lower = " ".join(self.lower) or "-"
        return f"{self.source} ({upper} / {lower}) -> {self.target}"


@dataclass(frozen=True)
class WKAutomaton:
    """
    Watson-Crick automaton (V, rho, Q, q0, F, delta). The alphabet and state
    tuples keep declaration order; that order drives enumeration.
    """

    alphabet: tuple[Symbol, ...]
    rho: ComplementarityRelation
    states: tuple[StateId, ...]
    start: StateId
    finals: frozenset[StateId]
    transitions: tuple[Transition, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        # Identical rules collapse; declaration order is kept.
        object.__setattr__(self, "transitions", tuple(dict.fromkeys(self.transitions)))
        self._validate()

    def _validate(self) -> None:
        for symbol in self.alphabet:
            check_symbol(symbol)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DefinitionError("alphabet declares a symbol twice")
        for state in self.states:
            check_symbol(state, "state")
        if len(set(self.states)) != len(self.states):
            raise DefinitionError("states declares a state twice")

        declared = set(self.states)
        symbols = set(self.alphabet)
        if self.start not in declared:
            raise DefinitionError(f"start state {self.start!r} is not declared")
        stray = self.finals - declared
        if stray:
            raise DefinitionError(f"final states {sorted(stray)} are not declared")
        for upper, lower in self.rho.pairs:
            if upper not in symbols or lower not in symbols:
                raise DefinitionError(f"rho pair ({upper}, {lower}) leaves the alphabet")
        for rule in self.transitions:
            if rule.source not in declared or rule.target not in declared:
                raise DefinitionError(f"transition {rule} uses an undeclared state")
            unknown = [s for s in (*rule.upper, *rule.lower) if s not in symbols]
            if unknown:
                raise DefinitionError(f"transition {rule} uses undeclared symbols {unknown}")

    @cached_property
    def _by_source(self) -> dict[StateId, tuple[Transition, ...]]:
        index: dict[StateId, list[Transition]] = {state: [] for state in self.states}
        for rule in self.transitions:
            index[rule.source].append(rule)
        return {state: tuple(rules) for state, rules in index.items()}

    def rules_from(self, state: StateId) -> tuple[Transition, ...]:
        return self._by_source.get(state, ())


@dataclass(frozen=True)
class DoubleStrand:
    """A pair [upper / lower] of equal length, related pointwise by rho."""

    upper: Word
    lower: Word
    rho: ComplementarityRelation = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower):
            raise InvalidStrand(
                f"strands differ in length ({len(self.upper)} vs {len(self.lower)})"
            )
        for i, (upper, lower) in enumerate(zip(self.upper, self.lower)):
            if not self.rho.relates(upper, lower):
                raise InvalidStrand(f"({upper}, {lower}) at position {i} is not in rho", position=i)

    def __len__(self) -> int:
        return len(self.upper)


@dataclass(frozen=True)
class WKConfiguration:
    state: StateId
    upper_pos: int = 0
    lower_pos: int = 0
