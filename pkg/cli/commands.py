from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, TextIO

from constructions.pipeline import convert
from core.config import AppConfig
from core.errors import ResourceBound, UsageError
from cli.document import EMPTY, load_document, render_document
from cli.render import (
    Painter,
    classification_lines,
    equiv_line,
    inconclusive_line,
    report_lines,
    trace_lines,
    verdict_line,
    weak_nondeterminism_line,
    word_lines,
)
from oracle.acceptor import as_acceptor
from oracle.enumeration import enumerate_accepted
from oracle.equivalence import Equal, Inconclusive, bounded_equiv
from restriction.language import membership, with_budget
from restriction.restricted import RestrictedWKAutomaton, evaluate
from wk.automaton import DoubleStrand, Symbol, WKAutomaton, Word
from wk.classify import classify
from wk.engine import complements, find_weak_nondeterminism, trace_run

logger = logging.getLogger(__name__)

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def parse_word(tokens: Iterable[str], alphabet: Iterable[Symbol]) -> Word:
    """
    Command-line word. `-` alone is the empty word; a token that is not a
    symbol but whose characters all are is split into characters.
    """
    tokens = list(tokens)
    alphabet = set(alphabet)
    if tokens == [EMPTY]:
        return ()
    word: list[Symbol] = []
    for token in tokens:
        if token in alphabet:
            word.append(token)
        elif all(ch in alphabet for ch in token):
            word.extend(token)
        else:
            raise UsageError(f"word token {token!r} is not over the alphabet {sorted(alphabet)}")
    return tuple(word)


class Commands:
    """Subcommand handlers; each returns the process exit code."""

    def __init__(self, config: AppConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> None:
        self.config = config
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.painter = Painter(config.output.color and self.out.isatty())

    def _say(self, line: str) -> None:
        print(line, file=self.out)

    def _note(self, line: str) -> None:
        print(line, file=self.err)

    def _load(self, path: str) -> object:
        document = load_document(Path(path))
        logger.debug("loaded %s document from %s", document.kind, path)
        return document.machine

    def _wk_machine(self, path: str) -> WKAutomaton:
        machine = self._load(path)
        if isinstance(machine, RestrictedWKAutomaton):
            return machine.core
        if isinstance(machine, WKAutomaton):
            return machine
        raise UsageError(f"{path} is not a WK machine")

    def run(self, path: str, word_tokens: list[str], trace: bool = False) -> int:
        machine = self._load(path)
        acceptor = as_acceptor(machine, self.config.engine)
        word = parse_word(word_tokens, acceptor.alphabet)
        witness: Optional[Word] = None
        try:
            if isinstance(machine, RestrictedWKAutomaton):
                restriction = with_budget(machine.restriction, self.config.engine.cs_budget)
                verdict = evaluate(RestrictedWKAutomaton(machine.core, restriction), word)
                accepted, witness = verdict.accepted, verdict.witness
                if verdict.rejected_before_run:
                    self._note("note: no complement lies in the restriction; rejected before running")
            else:
                accepted = acceptor(word)
        except ResourceBound as exc:
            self._say(inconclusive_line(self.painter, word))
            self._note(f"error: {exc.reason}")
            return EXIT_ERROR
        if trace:
            self._trace(machine, word, witness)
        self._say(verdict_line(self.painter, accepted))
        return EXIT_POSITIVE if accepted else EXIT_NEGATIVE

    def _trace(self, machine: object, word: Word, witness: Optional[Word]) -> None:
        restricted = isinstance(machine, RestrictedWKAutomaton)
        core = machine.core if restricted else machine
        if not isinstance(core, WKAutomaton):
            raise UsageError("--trace needs a WK machine")
        if witness is not None:
            chosen = trace_run(core, DoubleStrand(word, witness, core.rho))
        else:
            # Rejected: show the first run the machine actually makes.
            lowers = [
                lower
                for lower in complements(core.rho, word)
                if not restricted or membership(machine.restriction, lower)
            ]
            traces = [trace_run(core, DoubleStrand(word, lower, core.rho)) for lower in lowers]
            chosen = next((t for t in traces if t.accepted), traces[0] if traces else None)
        if chosen is None:
            self._note("no complement to trace")
            return
        for line in trace_lines(chosen):
            self._note(line)

    def classify(self, path: str) -> int:
        for line in classification_lines(classify(self._wk_machine(path))):
            self._say(line)
        return EXIT_POSITIVE

    def convert(self, path: str, target: str, output: Optional[str] = None, pad: str = "a") -> int:
        result, report = convert(self._load(path), target, pad)
        text = render_document(result)
        if output:
            Path(output).write_text(text, encoding="utf-8")
        else:
            self.out.write(text)
        for line in report_lines(self.painter, report):
            self._note(line)
        return EXIT_POSITIVE

    def enum(self, path: str, max_len: int) -> int:
        acceptor = as_acceptor(self._load(path), self.config.engine)
        try:
            words = enumerate_accepted(acceptor, max_len, self.config.oracle.jobs)
        except ResourceBound as exc:
            self._say(inconclusive_line(self.painter, exc.word or ()))
            self._note(f"error: {exc.reason}")
            return EXIT_ERROR
        for line in word_lines(words):
            self._say(line)
        return EXIT_POSITIVE

    def equiv(self, left_path: str, right_path: str, max_len: int) -> int:
        left = as_acceptor(self._load(left_path), self.config.engine, name=left_path)
        right = as_acceptor(self._load(right_path), self.config.engine, name=right_path)
        result = bounded_equiv(left, right, max_len)
        self._say(equiv_line(self.painter, result))
        if isinstance(result, Equal):
            return EXIT_POSITIVE
        if isinstance(result, Inconclusive):
            self._note(f"error: {result.reason}")
            return EXIT_ERROR
        self._note(f"{left_path}: {verdict_line(Painter(False), result.left)}, "
                   f"{right_path}: {verdict_line(Painter(False), result.right)}")
        return EXIT_NEGATIVE

    def check_weak_det(self, path: str, max_len: int) -> int:
        witness = find_weak_nondeterminism(self._wk_machine(path), max_len)
        if witness is None:
            self._say(self.painter.positive(f"weakly-deterministic (strands up to {max_len})"))
            return EXIT_POSITIVE
        self._say(weak_nondeterminism_line(self.painter, witness))
        for rule in witness.rules:
            self._note(f"  applicable: {rule}")
        return EXIT_NEGATIVE
