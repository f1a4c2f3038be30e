"""
Line-based text format for machines, grammars and languages.

    kind: restricted-wk            # wk | restricted-wk | dfa | pda | cfg | csg | finite
    alphabet: a b
    rho: a:a b:a
    states: q0 qf
    start: q0
    final: qf
    trans: q0 a / - -> q0          # '-' is the empty word
    restriction: unary-regular inline
      alphabet: a
      ...

`#` opens a comment only at the start of a token, so chain states such as
`q0#1` survive a round trip.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

from core.errors import DefinitionError, NonDeterministicMachine, ParseError, UndeclaredSymbol, UnknownKind
from pda.automaton import PDA, PDARule
from restriction.dfa import DFA
from restriction.grammars import CFG, CSG, Production, Rewrite
from restriction.language import (
    ContextFreeLanguage,
    ContextSensitiveLanguage,
    FiniteLanguage,
    RegularLanguage,
    RestrictionLanguage,
    UnaryRegularLanguage,
    kind_name,
)
from restriction.restricted import RestrictedWKAutomaton
from wk.automaton import ComplementarityRelation, Transition, WKAutomaton, Word

logger = logging.getLogger(__name__)

KINDS = ("wk", "restricted-wk", "dfa", "pda", "cfg", "csg", "finite")
# restriction class -> document kind it is written in
RESTRICTION_KINDS = {
    "finite": "finite",
    "regular": "dfa",
    "unary-regular": "dfa",
    "cfg": "cfg",
    "csg": "csg",
}
EMPTY = "-"

_COMMENT = re.compile(r"(?:^|(?<=\s))#.*$")
_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    text: str
    column: int


@dataclass(frozen=True)
class Entry:
    key: str
    values: tuple[Token, ...]
    line: int
    column: int
    indented: bool


@dataclass(frozen=True)
class SourceDocument:
    kind: str
    machine: object
    path: Optional[Path] = None


def _entries(text: str) -> Iterator[Entry]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw)
        tokens = [Token(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        head = tokens[0]
        if not head.text.endswith(":") or len(head.text) == 1:
            raise ParseError(number, head.column, f"expected 'key: value', got {head.text!r}")
        yield Entry(head.text[:-1], tuple(tokens[1:]), number, head.column, line[:1].isspace())


class _Fields:
    """Entries of one block, checked against the keys that block allows."""

    def __init__(self, entries: Iterable[Entry], allowed: Iterable[str], repeatable: Iterable[str], anchor: Entry):
        self.anchor = anchor
        self._by_key: dict[str, list[Entry]] = {}
        allowed, repeatable = set(allowed), set(repeatable)
        for entry in entries:
            if entry.key not in allowed:
                raise ParseError(entry.line, entry.column, f"unknown key '{entry.key}:' here")
            if entry.key in self._by_key and entry.key not in repeatable:
                raise ParseError(entry.line, entry.column, f"'{entry.key}:' given twice")
            self._by_key.setdefault(entry.key, []).append(entry)

    def all(self, key: str) -> list[Entry]:
        return self._by_key.get(key, [])

    def optional(self, key: str) -> Optional[Entry]:
        found = self.all(key)
        return found[0] if found else None

    def one(self, key: str) -> Entry:
        entry = self.optional(key)
        if entry is None:
            raise ParseError(self.anchor.line, self.anchor.column, f"missing '{key}:'")
        return entry

    def single(self, key: str) -> Token:
        entry = self.one(key)
        if len(entry.values) != 1:
            raise ParseError(entry.line, entry.column, f"'{key}:' takes exactly one value")
        return entry.values[0]


def _declared(fields: _Fields, key: str, what: str) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for entry in fields.all(key):
        for token in entry.values:
            if token.text in seen:
                raise ParseError(entry.line, token.column, f"{what} {token.text!r} declared twice")
            seen[token.text] = None
    return tuple(seen)


def _check(entry: Entry, token: Token, declared: Iterable[str], what: str) -> str:
    if token.text not in declared:
        raise UndeclaredSymbol(entry.line, token.column, f"undeclared {what} {token.text!r}")
    return token.text


def _word(entry: Entry, tokens: list[Token], declared: Iterable[str], what: str = "symbol") -> Word:
    if len(tokens) == 1 and tokens[0].text == EMPTY:
        return ()
    if not tokens:
        raise ParseError(entry.line, entry.column, f"empty word must be written '{EMPTY}'")
    return tuple(_check(entry, token, declared, what) for token in tokens)


def _split(entry: Entry, tokens: list[Token], marker: str) -> tuple[list[Token], list[Token]]:
    for i, token in enumerate(tokens):
        if token.text == marker:
            return tokens[:i], tokens[i + 1 :]
    raise ParseError(entry.line, entry.column, f"expected '{marker}' in '{entry.key}:'")


# Builders ---------------------------------------------------------------


def _build_wk(fields: _Fields) -> WKAutomaton:
    alphabet = _declared(fields, "alphabet", "symbol")
    states = _declared(fields, "states", "state")
    start = _check(fields.one("start"), fields.single("start"), states, "state")
    finals = {_check(e, t, states, "state") for e in fields.all("final") for t in e.values}

    pairs = set()
    for entry in fields.all("rho"):
        for token in entry.values:
            upper, sep, lower = token.text.partition(":")
            if not sep or not upper or not lower or ":" in lower:
                raise ParseError(entry.line, token.column, f"rho pair must be 'upper:lower', got {token.text!r}")
            for part, offset in ((upper, 0), (lower, len(upper) + 1)):
                if part not in alphabet:
                    raise UndeclaredSymbol(entry.line, token.column + offset, f"undeclared symbol {part!r}")
            pairs.add((upper, lower))

    transitions = []
    for entry in fields.all("trans"):
        tokens = list(entry.values)
        left, target = _split(entry, tokens, "->")
        if len(target) != 1 or not left:
            raise ParseError(entry.line, entry.column, "transition must read 'q upper / lower -> p'")
        source, strands = left[0], left[1:]
        upper, lower = _split(entry, strands, "/")
        transitions.append(
            Transition(
                _check(entry, source, states, "state"),
                _word(entry, upper, alphabet),
                _word(entry, lower, alphabet),
                _check(entry, target[0], states, "state"),
            )
        )
    return WKAutomaton(alphabet, ComplementarityRelation(frozenset(pairs)), states, start, finals, tuple(transitions))


def _build_dfa(fields: _Fields) -> DFA:
    alphabet = _declared(fields, "alphabet", "symbol")
    states = _declared(fields, "states", "state")
    start = _check(fields.one("start"), fields.single("start"), states, "state")
    finals = {_check(e, t, states, "state") for e in fields.all("final") for t in e.values}
    delta = {}
    for entry in fields.all("step"):
        tokens = list(entry.values)
        left, right = _split(entry, tokens, "->")
        if len(left) != 2 or len(right) != 1:
            raise ParseError(entry.line, entry.column, "step must read 'q x -> p'")
        source = _check(entry, left[0], states, "state")
        symbol = _check(entry, left[1], alphabet, "symbol")
        if (source, symbol) in delta:
            raise ParseError(entry.line, entry.column, f"second step for ({source}, {symbol})")
        delta[(source, symbol)] = _check(entry, right[0], states, "state")
    dfa = DFA(states, alphabet, start, finals, delta)
    completed = dfa.completed()
    if completed is not dfa:
        logger.warning("DFA is partial; added sink state %s", completed.states[-1])
    return completed


def _build_pda(fields: _Fields) -> PDA:
    states = _declared(fields, "states", "state")
    inputs = _declared(fields, "input", "input symbol")
    stack = _declared(fields, "stack", "stack symbol")
    start = _check(fields.one("start"), fields.single("start"), states, "state")
    bottom = _check(fields.one("bottom"), fields.single("bottom"), stack, "stack symbol")
    bound = None
    if fields.optional("bound") is not None:
        bound = _check(fields.one("bound"), fields.single("bound"), stack, "stack symbol")
    rules = []
    for entry in fields.all("rule"):
        left, right = _split(entry, list(entry.values), "->")
        if len(left) != 3 or not right:
            raise ParseError(entry.line, entry.column, "rule must read 'q x top -> p push...'")
        read = None if left[1].text == EMPTY else _check(entry, left[1], inputs, "input symbol")
        rules.append(
            PDARule(
                _check(entry, left[0], states, "state"),
                read,
                _check(entry, left[2], stack, "stack symbol"),
                _check(entry, right[0], states, "state"),
                _word(entry, right[1:] or [Token(EMPTY, right[0].column)], stack, "stack symbol"),
            )
        )
    return PDA(states, inputs, stack, start, bottom, tuple(rules), bound)


def _grammar_parts(fields: _Fields) -> tuple[tuple[str, ...], tuple[str, ...], str]:
    nonterminals = _declared(fields, "nonterminals", "nonterminal")
    terminals = _declared(fields, "terminals", "terminal")
    start = _check(fields.one("start"), fields.single("start"), nonterminals, "nonterminal")
    return nonterminals, terminals, start


def _build_cfg(fields: _Fields) -> ContextFreeLanguage:
    nonterminals, terminals, start = _grammar_parts(fields)
    symbols = (*nonterminals, *terminals)
    rules = []
    for entry in fields.all("rule"):
        left, right = _split(entry, list(entry.values), "->")
        if len(left) != 1:
            raise ParseError(entry.line, entry.column, "context-free rule has one symbol on the left")
        lhs = _check(entry, left[0], nonterminals, "nonterminal")
        rules.append(Production(lhs, _word(entry, right, symbols)))
    return ContextFreeLanguage(CFG(nonterminals, terminals, start, tuple(rules)))


def _build_csg(fields: _Fields) -> ContextSensitiveLanguage:
    nonterminals, terminals, start = _grammar_parts(fields)
    symbols = (*nonterminals, *terminals)
    rules = []
    for entry in fields.all("rule"):
        left, right = _split(entry, list(entry.values), "->")
        try:
            rules.append(Rewrite(_word(entry, left, symbols), _word(entry, right, symbols)))
        except DefinitionError as exc:
            raise ParseError(entry.line, entry.column, str(exc)) from exc
    try:
        return ContextSensitiveLanguage(CSG(nonterminals, terminals, start, tuple(rules)))
    except DefinitionError as exc:
        # Point at the offending rule when the message names one.
        entry = next((e for e, r in zip(fields.all("rule"), rules) if f"rule {r}" in str(exc)), fields.anchor)
        raise ParseError(entry.line, entry.column, str(exc)) from exc


def _build_finite(fields: _Fields) -> FiniteLanguage:
    alphabet = _declared(fields, "alphabet", "symbol")
    words = []
    for entry in fields.all("word"):
        tokens = list(entry.values)
        if alphabet:
            words.append(_word(entry, tokens, alphabet))
        else:
            words.append(() if [t.text for t in tokens] == [EMPTY] else tuple(t.text for t in tokens))
    return FiniteLanguage.of(words, alphabet)


_SCHEMAS = {
    "wk": (("alphabet", "rho", "states", "start", "final", "trans"), _build_wk),
    "dfa": (("alphabet", "states", "start", "final", "step"), _build_dfa),
    "pda": (("states", "input", "stack", "start", "bottom", "bound", "rule"), _build_pda),
    "cfg": (("nonterminals", "terminals", "start", "rule"), _build_cfg),
    "csg": (("nonterminals", "terminals", "start", "rule"), _build_csg),
    "finite": (("alphabet", "word"), _build_finite),
}
_REPEATABLE = {"alphabet", "rho", "states", "final", "trans", "step", "input", "stack", "rule", "word",
               "nonterminals", "terminals"}


def _build(kind: str, entries: list[Entry], anchor: Entry):
    keys, builder = _SCHEMAS[kind]
    fields = _Fields(entries, keys, _REPEATABLE, anchor)
    try:
        return builder(fields)
    except ParseError:
        raise
    except DefinitionError as exc:
        raise ParseError(anchor.line, anchor.column, str(exc)) from exc


def _as_restriction(cls: str, machine: object, entry: Entry) -> RestrictionLanguage:
    try:
        if cls == "regular":
            return RegularLanguage(machine)  # type: ignore[arg-type]
        if cls == "unary-regular":
            return UnaryRegularLanguage(machine)  # type: ignore[arg-type]
    except DefinitionError as exc:
        raise ParseError(entry.line, entry.column, str(exc)) from exc
    return machine  # type: ignore[return-value]


def _restriction(entry: Entry, block: list[Entry], base: Optional[Path]) -> RestrictionLanguage:
    values = entry.values
    if len(values) != 2:
        raise ParseError(entry.line, entry.column, "restriction must read '<class> inline|<path>'")
    cls_token, source = values
    if cls_token.text not in RESTRICTION_KINDS:
        raise UnknownKind(entry.line, cls_token.column, f"unknown restriction class {cls_token.text!r}")
    kind = RESTRICTION_KINDS[cls_token.text]
    if source.text == "inline":
        if not block:
            raise ParseError(entry.line, source.column, "inline restriction has no indented block")
        machine = _build(kind, block, entry)
    else:
        if block:
            raise ParseError(block[0].line, block[0].column, "indented block after a file restriction")
        path = (base or Path.cwd()) / source.text
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(entry.line, source.column, f"cannot read {source.text}: {exc.strerror}") from exc
        document = parse_document(text, base=path.parent, path=path)
        if document.kind != kind:
            raise ParseError(entry.line, source.column, f"{source.text} is a {document.kind}, expected {kind}")
        machine = document.machine
    return _as_restriction(cls_token.text, machine, entry)


def parse_document(text: str, base: Optional[Path] = None, path: Optional[Path] = None) -> SourceDocument:
    entries = list(_entries(text))
    if not entries or entries[0].key != "kind":
        where = entries[0] if entries else None
        raise ParseError(where.line if where else 1, where.column if where else 1, "missing kind header")
    header = entries[0]
    if len(header.values) != 1:
        raise ParseError(header.line, header.column, "'kind:' takes exactly one value")
    kind = header.values[0].text
    if kind not in KINDS:
        raise UnknownKind(header.line, header.values[0].column, f"unknown kind {kind!r}")

    body = entries[1:]
    for entry in body:
        if entry.key == "kind":
            raise ParseError(entry.line, entry.column, "second kind header")

    if kind != "restricted-wk":
        for entry in body:
            if entry.indented or entry.key == "restriction":
                raise ParseError(entry.line, entry.column, f"unexpected '{entry.key}:' in a {kind} file")
        return SourceDocument(kind, _build(kind, body, header), path)

    own: list[Entry] = []
    block: list[Entry] = []
    restriction_entry: Optional[Entry] = None
    for entry in body:
        if entry.key == "restriction" and not entry.indented:
            if restriction_entry is not None:
                raise ParseError(entry.line, entry.column, "'restriction:' given twice")
            restriction_entry = entry
        elif entry.indented:
            if restriction_entry is None or (own and own[-1].line > restriction_entry.line):
                raise ParseError(entry.line, entry.column, "indented line outside a restriction block")
            block.append(entry)
        else:
            own.append(entry)
    if restriction_entry is None:
        raise ParseError(header.line, header.column, "missing 'restriction:'")

    core = _build("wk", own, header)
    restriction = _restriction(restriction_entry, block, base)
    try:
        machine = RestrictedWKAutomaton(core, restriction)
    except NonDeterministicMachine as exc:
        raise ParseError(header.line, header.column, str(exc)) from exc
    return SourceDocument(kind, machine, path)


def load_document(path: Path) -> SourceDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(1, 1, f"cannot read {path}: {exc.strerror}") from exc
    return parse_document(text, base=path.parent, path=path)


# Rendering --------------------------------------------------------------


def _join(word: Iterable[str]) -> str:
    return " ".join(word) or EMPTY


def _lines_wk(machine: WKAutomaton) -> list[str]:
    rank = {symbol: i for i, symbol in enumerate(machine.alphabet)}
    pairs = sorted(machine.rho.pairs, key=lambda pair: (rank[pair[0]], rank[pair[1]]))
    lines = [f"alphabet: {' '.join(machine.alphabet)}"]
    if pairs:
        lines.append("rho: " + " ".join(f"{u}:{l}" for u, l in pairs))
    lines += [f"states: {' '.join(machine.states)}", f"start: {machine.start}"]
    finals = [state for state in machine.states if state in machine.finals]
    if finals:
        lines.append(f"final: {' '.join(finals)}")
    lines += [
        f"trans: {rule.source} {_join(rule.upper)} / {_join(rule.lower)} -> {rule.target}"
        for rule in machine.transitions
    ]
    return lines


def _lines_dfa(dfa: DFA) -> list[str]:
    lines = [f"alphabet: {' '.join(dfa.alphabet)}", f"states: {' '.join(dfa.states)}", f"start: {dfa.start}"]
    finals = [state for state in dfa.states if state in dfa.finals]
    if finals:
        lines.append(f"final: {' '.join(finals)}")
    lines += [f"step: {source} {symbol} -> {target}" for source, symbol, target in dfa.steps()]
    return lines


def _lines_pda(pda: PDA) -> list[str]:
    lines = [
        f"states: {' '.join(pda.states)}",
        f"input: {' '.join(pda.input_alphabet)}",
        f"stack: {' '.join(pda.stack_alphabet)}",
        f"start: {pda.start}",
        f"bottom: {pda.initial_stack_symbol}",
    ]
    if pda.input_bound_symbol is not None:
        lines.append(f"bound: {pda.input_bound_symbol}")
    lines += [f"rule: {rule}" for rule in pda.rules]
    return lines


def _lines_grammar(grammar: CFG | CSG) -> list[str]:
    return [
        f"nonterminals: {' '.join(grammar.nonterminals)}",
        f"terminals: {' '.join(grammar.terminals)}",
        f"start: {grammar.start}",
        *(f"rule: {rule}" for rule in grammar.rules),
    ]


def _lines_finite(language: FiniteLanguage) -> list[str]:
    lines = [f"alphabet: {' '.join(language.alphabet)}"] if language.alphabet else []
    rank = {symbol: i for i, symbol in enumerate(language.alphabet)}
    ordered = sorted(language.words, key=lambda w: (len(w), [rank[s] for s in w]))
    return lines + [f"word: {_join(word)}" for word in ordered]


def _lines_language(language: RestrictionLanguage) -> list[str]:
    match language:
        case RegularLanguage(dfa=dfa) | UnaryRegularLanguage(dfa=dfa):
            return _lines_dfa(dfa)
        case ContextFreeLanguage(grammar=grammar) | ContextSensitiveLanguage(grammar=grammar):
            return _lines_grammar(grammar)
        case FiniteLanguage():
            return _lines_finite(language)
    raise TypeError(f"not a restriction language: {language!r}")


def kind_of(machine: object) -> str:
    match machine:
        case RestrictedWKAutomaton():
            return "restricted-wk"
        case WKAutomaton():
            return "wk"
        case DFA():
            return "dfa"
        case PDA():
            return "pda"
        case RegularLanguage() | UnaryRegularLanguage():
            return "dfa"
    return kind_name(machine)  # type: ignore[arg-type]


def render_document(machine: object) -> str:
    """Text form of any machine; restrictions are always written inline."""
    kind = kind_of(machine)
    match machine:
        case RestrictedWKAutomaton(core=core, restriction=restriction):
            lines = _lines_wk(core)
            lines.append(f"restriction: {kind_name(restriction)} inline")
            lines += ["  " + line for line in _lines_language(restriction)]
        case WKAutomaton():
            lines = _lines_wk(machine)
        case DFA():
            lines = _lines_dfa(machine)
        case PDA():
            lines = _lines_pda(machine)
        case _:
            lines = _lines_language(machine)  # type: ignore[arg-type]
    return "\n".join([f"kind: {kind}", *lines]) + "\n"
