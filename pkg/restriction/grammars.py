from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

import numpy as np

from core.errors import DefinitionError, ResourceBound
from wk.automaton import Symbol, Word, check_symbol
from wk.naming import NameAllocator

logger = logging.getLogger(__name__)


def _check_vocabulary(nonterminals: tuple[Symbol, ...], terminals: tuple[Symbol, ...], start: Symbol) -> None:
    for symbol in (*nonterminals, *terminals):
        check_symbol(symbol)
    if len(set(nonterminals)) != len(nonterminals) or len(set(terminals)) != len(terminals):
        raise DefinitionError("grammar declares a symbol twice")
    shared = set(nonterminals) & set(terminals)
    if shared:
        raise DefinitionError(f"symbols {sorted(shared)} are both terminal and nonterminal")
    if start not in nonterminals:
        raise DefinitionError(f"start symbol {start!r} is not a declared nonterminal")


def _format_side(side: tuple[Symbol, ...]) -> str:
    return " ".join(side) or "-"


@dataclass(frozen=True)
class Production:
    lhs: Symbol
    rhs: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def __str__(self) -> str:
        return f"{self.lhs} -> {_format_side(self.rhs)}"


@dataclass(frozen=True)
class CFG:
    nonterminals: tuple[Symbol, ...]
    terminals: tuple[Symbol, ...]
    start: Symbol
    rules: tuple[Production, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))
        _check_vocabulary(self.nonterminals, self.terminals, self.start)
        declared = {*self.nonterminals, *self.terminals}
        for rule in self.rules:
            if rule.lhs not in self.nonterminals:
                raise DefinitionError(f"rule {rule}: left side is not a nonterminal")
            unknown = [s for s in rule.rhs if s not in declared]
            if unknown:
                raise DefinitionError(f"rule {rule} uses undeclared symbols {unknown}")

    def rules_for(self, nonterminal: Symbol) -> tuple[Production, ...]:
        return tuple(rule for rule in self.rules if rule.lhs == nonterminal)

    def is_cnf(self) -> bool:
        nonterminals = set(self.nonterminals)
        for rule in self.rules:
            rhs = rule.rhs
            if not rhs:
                if rule.lhs != self.start:
                    return False
            elif len(rhs) == 1:
                if rhs[0] in nonterminals:
                    return False
            elif len(rhs) == 2:
                if not (rhs[0] in nonterminals and rhs[1] in nonterminals):
                    return False
                if self.start in rhs and any(r.lhs == self.start and not r.rhs for r in self.rules):
                    return False
            else:
                return False
        return True

    @cached_property
    def recognizer(self) -> "CYKRecognizer":
        return CYKRecognizer(cnf_normalize(self))

    def accepts(self, word: Word) -> bool:
        return self.recognizer.accepts(tuple(word))


def _nullable(rules: Iterable[tuple[Symbol, tuple[Symbol, ...]]]) -> set[Symbol]:
    rules = list(rules)
    nullable: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    return nullable


def _without_nullable(rhs: tuple[Symbol, ...], nullable: set[Symbol]) -> Iterator[tuple[Symbol, ...]]:
    options = [(s, None) if s in nullable else (s,) for s in rhs]
    for choice in itertools.product(*options):
        yield tuple(s for s in choice if s is not None)


def cnf_normalize(grammar: CFG) -> CFG:
    """
    Weakly equivalent grammar in Chomsky normal form: A -> B C, A -> a, plus
    S0 -> - on the fresh start symbol when the empty word is in the language.
    """
    terminals = set(grammar.terminals)
    names = NameAllocator((*grammar.nonterminals, *grammar.terminals))
    start = names.claim(f"{grammar.start}0")
    nonterminals = [start, *grammar.nonterminals]
    rules = [(start, (grammar.start,))] + [(r.lhs, r.rhs) for r in grammar.rules]

    # Terminals inside long right sides get a proxy nonterminal.
    proxies: dict[Symbol, Symbol] = {}
    for t in grammar.terminals:
        if any(len(rhs) >= 2 and t in rhs for _, rhs in rules):
            proxies[t] = names.claim(f"T_{t}")
            nonterminals.append(proxies[t])
    rules = [
        (lhs, tuple(proxies.get(s, s) for s in rhs) if len(rhs) >= 2 else rhs) for lhs, rhs in rules
    ] + [(proxy, (t,)) for t, proxy in proxies.items()]

    # Right sides longer than two become chains.
    binary: list[tuple[Symbol, tuple[Symbol, ...]]] = []
    for lhs, rhs in rules:
        while len(rhs) > 2:
            link = names.claim(f"{lhs}_")
            nonterminals.append(link)
            binary.append((lhs, (rhs[0], link)))
            lhs, rhs = link, rhs[1:]
        binary.append((lhs, rhs))

    # Drop empty right sides, keeping every nullable variant.
    nullable = _nullable(binary)
    non_empty = dict.fromkeys(
        (lhs, variant) for lhs, rhs in binary for variant in _without_nullable(rhs, nullable) if variant
    )

    # Collapse unit chains.
    nt_set = set(nonterminals)
    units: dict[Symbol, list[Symbol]] = {nt: [] for nt in nonterminals}
    for lhs, rhs in non_empty:
        if len(rhs) == 1 and rhs[0] in nt_set:
            units[lhs].append(rhs[0])
    productive: dict[Symbol, list[tuple[Symbol, ...]]] = {nt: [] for nt in nonterminals}
    for lhs, rhs in non_empty:
        if not (len(rhs) == 1 and rhs[0] in nt_set):
            productive[lhs].append(rhs)
    collapsed = {}
    for nt in nonterminals:
        for reached in _closure(nt, units):
            for rhs in productive[reached]:
                collapsed[(nt, rhs)] = None
    if start in nullable:
        collapsed[(start, ())] = None

    kept = _useful(start, list(collapsed), terminals)
    used = [nt for nt in nonterminals if nt == start or any(lhs == nt for lhs, _ in kept)]
    result = CFG(tuple(used), grammar.terminals, start, tuple(Production(l, r) for l, r in kept))
    logger.debug("CNF of %d rules has %d rules", len(grammar.rules), len(result.rules))
    return result


def _closure(nonterminal: Symbol, units: dict[Symbol, list[Symbol]]) -> list[Symbol]:
    reached = [nonterminal]
    seen = {nonterminal}
    frontier = deque([nonterminal])
    while frontier:
        for nxt in units[frontier.popleft()]:
            if nxt not in seen:
                seen.add(nxt)
                reached.append(nxt)
                frontier.append(nxt)
    return reached


def _useful(
    start: Symbol, rules: list[tuple[Symbol, tuple[Symbol, ...]]], terminals: set[Symbol]
) -> list[tuple[Symbol, tuple[Symbol, ...]]]:
    generating: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs not in generating and all(s in terminals or s in generating for s in rhs):
                generating.add(lhs)
                changed = True
    rules = [(lhs, rhs) for lhs, rhs in rules if lhs in generating and all(s in terminals or s in generating for s in rhs)]

    reachable = {start}
    frontier = deque([start])
    while frontier:
        current = frontier.popleft()
        for lhs, rhs in rules:
            if lhs == current:
                for s in rhs:
                    if s not in terminals and s not in reachable:
                        reachable.add(s)
                        frontier.append(s)
    return [(lhs, rhs) for lhs, rhs in rules if lhs in reachable]


class CYKRecognizer:
    """
    CYK over a CNF grammar. `table[i, n, A]` says nonterminal A derives the
    n symbols starting at position i.
    """

    def __init__(self, cnf: CFG) -> None:
        if not cnf.is_cnf():
            raise DefinitionError("CYK needs a grammar in Chomsky normal form")
        self.grammar = cnf
        self._index = {nt: i for i, nt in enumerate(cnf.nonterminals)}
        self._derives_empty = any(r.lhs == cnf.start and not r.rhs for r in cnf.rules)
        self._terminal_heads: dict[Symbol, np.ndarray] = {}
        for t in cnf.terminals:
            heads = [self._index[r.lhs] for r in cnf.rules if r.rhs == (t,)]
            self._terminal_heads[t] = np.array(heads, dtype=np.intp)
        binary = [
            (self._index[r.lhs], self._index[r.rhs[0]], self._index[r.rhs[1]])
            for r in cnf.rules
            if len(r.rhs) == 2
        ]
        table = np.array(binary, dtype=np.intp).reshape(-1, 3)
        self._heads, self._left, self._right = table[:, 0], table[:, 1], table[:, 2]
        self.accepts = lru_cache(maxsize=1 << 16)(self._accepts)

    def _accepts(self, word: Word) -> bool:
        size = len(word)
        if size == 0:
            return self._derives_empty
        table = np.zeros((size, size + 1, len(self._index)), dtype=bool)
        for i, symbol in enumerate(word):
            heads = self._terminal_heads.get(symbol)
            if heads is None or heads.size == 0:
                return False
            table[i, 1, heads] = True
        for span in range(2, size + 1):
            for i in range(size - span + 1):
                cell = table[i, span]
                for split in range(1, span):
                    hits = table[i, split, self._left] & table[i + split, span - split, self._right]
                    cell[self._heads[hits]] = True
        return bool(table[0, size, self._index[self.grammar.start]])


@dataclass(frozen=True)
class Rewrite:
    lhs: tuple[Symbol, ...]
    rhs: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def __str__(self) -> str:
        return f"{_format_side(self.lhs)} -> {_format_side(self.rhs)}"


@dataclass(frozen=True)
class CSG:
    """
    Noncontracting grammar: every rule has 1 <= |lhs| <= |rhs| and a
    nonterminal on the left. `S -> -` is allowed only when S is on no right side.
    """

    nonterminals: tuple[Symbol, ...]
    terminals: tuple[Symbol, ...]
    start: Symbol
    rules: tuple[Rewrite, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))
        _check_vocabulary(self.nonterminals, self.terminals, self.start)
        nonterminals = set(self.nonterminals)
        declared = nonterminals | set(self.terminals)
        start_on_right = any(self.start in rule.rhs for rule in self.rules)
        for rule in self.rules:
            unknown = [s for s in (*rule.lhs, *rule.rhs) if s not in declared]
            if unknown:
                raise DefinitionError(f"rule {rule} uses undeclared symbols {unknown}")
            if not rule.lhs or not any(s in nonterminals for s in rule.lhs):
                raise DefinitionError(f"rule {rule}: left side needs a nonterminal")
            if rule.lhs == (self.start,) and not rule.rhs:
                if start_on_right:
                    raise DefinitionError(f"rule {rule}: start appears on a right side")
                continue
            if len(rule.lhs) > len(rule.rhs):
                raise DefinitionError(f"rule {rule} is contracting")


@lru_cache(maxsize=64)
def derivable_words(grammar: CSG, max_len: int, budget: int) -> frozenset[Word]:
    """
    Every terminal word of length <= max_len derivable from the start symbol.
    Rules never shrink a form, so forms longer than max_len are dropped
    without losing words. Raises ResourceBound past `budget` distinct forms.
    """
    terminals = set(grammar.terminals)
    origin = (grammar.start,)
    seen = {origin}
    frontier = deque([origin])
    words = set()
    while frontier:
        form = frontier.popleft()
        if all(s in terminals for s in form):
            words.add(form)
            continue
        for rule in grammar.rules:
            width = len(rule.lhs)
            for i in range(len(form) - width + 1):
                if form[i : i + width] != rule.lhs:
                    continue
                nxt = form[:i] + rule.rhs + form[i + width :]
                if len(nxt) > max_len or nxt in seen:
                    continue
                seen.add(nxt)
                if len(seen) > budget:
                    raise ResourceBound(f"context-sensitive search passed {budget} sentential forms")
                frontier.append(nxt)
    logger.debug("CSG search to length %d explored %d forms", max_len, len(seen))
    return frozenset(words)


def csg_accepts(grammar: CSG, word: Word, budget: int) -> bool:
    word = tuple(word)
    if any(s not in grammar.terminals for s in word):
        return False
    try:
        return word in derivable_words(grammar, len(word), budget)
    except ResourceBound as exc:
        raise exc.with_word(word) from exc
