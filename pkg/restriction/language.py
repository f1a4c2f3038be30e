from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from core.errors import DefinitionError
from restriction.dfa import DFA
from restriction.grammars import CFG, CSG, csg_accepts
from wk.automaton import Symbol, Word, check_symbol

DEFAULT_CS_BUDGET = 1_000_000


@dataclass(frozen=True)
class FiniteLanguage:
    words: frozenset[Word]
    alphabet: tuple[Symbol, ...] = ()

    def __post_init__(self) -> None:
        words = frozenset(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not self.alphabet:
            seen = dict.fromkeys(s for w in sorted(words) for s in w)
            object.__setattr__(self, "alphabet", tuple(seen))
        else:
            object.__setattr__(self, "alphabet", tuple(self.alphabet))
        for symbol in self.alphabet:
            check_symbol(symbol)
        stray = {s for w in words for s in w} - set(self.alphabet)
        if stray:
            raise DefinitionError(f"finite language uses symbols {sorted(stray)} outside its alphabet")

    @classmethod
    def of(cls, words: Iterable[Iterable[Symbol]], alphabet: Iterable[Symbol] = ()) -> "FiniteLanguage":
        return cls(frozenset(tuple(w) for w in words), tuple(alphabet))

    @property
    def lengths(self) -> frozenset[int]:
        return frozenset(len(w) for w in self.words)


@dataclass(frozen=True)
class RegularLanguage:
    dfa: DFA

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return self.dfa.alphabet


@dataclass(frozen=True)
class UnaryRegularLanguage:
    dfa: DFA

    def __post_init__(self) -> None:
        if not self.dfa.is_unary:
            raise DefinitionError(
                f"unary-regular restriction needs a one-symbol alphabet, got {list(self.dfa.alphabet)}"
            )

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return self.dfa.alphabet

    @property
    def symbol(self) -> Symbol:
        return self.dfa.alphabet[0]


@dataclass(frozen=True)
class ContextFreeLanguage:
    grammar: CFG

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return self.grammar.terminals


@dataclass(frozen=True)
class ContextSensitiveLanguage:
    grammar: CSG
    budget: int = DEFAULT_CS_BUDGET

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return self.grammar.terminals


RestrictionLanguage = Union[
    FiniteLanguage,
    RegularLanguage,
    UnaryRegularLanguage,
    ContextFreeLanguage,
    ContextSensitiveLanguage,
]

KIND_NAMES = {
    FiniteLanguage: "finite",
    RegularLanguage: "regular",
    UnaryRegularLanguage: "unary-regular",
    ContextFreeLanguage: "cfg",
    ContextSensitiveLanguage: "csg",
}


def kind_name(language: RestrictionLanguage) -> str:
    return KIND_NAMES[type(language)]


def membership(language: RestrictionLanguage, word: Word) -> bool:
    """
    Exact membership. Symbols outside the language's alphabet give False.
    Only the context-sensitive search can raise ResourceBound.
    """
    word = tuple(word)
    if any(symbol not in language.alphabet for symbol in word):
        return False
    match language:
        case FiniteLanguage(words=words):
            return word in words
        case RegularLanguage(dfa=dfa) | UnaryRegularLanguage(dfa=dfa):
            return dfa.accepts(word)
        case ContextFreeLanguage(grammar=grammar):
            return grammar.accepts(word)
        case ContextSensitiveLanguage(grammar=grammar, budget=budget):
            return csg_accepts(grammar, word, budget)
    raise TypeError(f"not a restriction language: {language!r}")


def with_budget(language: RestrictionLanguage, budget: int) -> RestrictionLanguage:
    """Same language with a different CSG search cap; other classes pass through."""
    if isinstance(language, ContextSensitiveLanguage) and language.budget != budget:
        return ContextSensitiveLanguage(language.grammar, budget)
    return language
