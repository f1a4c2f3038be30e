from __future__ import annotations

from typing import Iterable

from xtermcolor import colorize

from constructions.report import ConstructionReport
from oracle.equivalence import Counterexample, Equal, EquivResult, Inconclusive
from wk.automaton import Word, format_word
from wk.classify import Classification
from wk.engine import RunTrace, WeakNondeterminism

GREEN = 40
RED = 160
YELLOW = 178
GREY = 245


class Painter:
    """Colours verdict lines; a disabled painter passes text through."""

    def __init__(self, enabled: bool) -> None:
        self.enabled = enabled

    def paint(self, text: str, ansi: int) -> str:
        return colorize(text, ansi=ansi) if self.enabled else text

    def positive(self, text: str) -> str:
        return self.paint(text, GREEN)

    def negative(self, text: str) -> str:
        return self.paint(text, RED)

    def unsure(self, text: str) -> str:
        return self.paint(text, YELLOW)

    def dim(self, text: str) -> str:
        return self.paint(text, GREY)


def verdict_line(painter: Painter, accepted: bool) -> str:
    return painter.positive("accept") if accepted else painter.negative("reject")


def inconclusive_line(painter: Painter, word: Word) -> str:
    return painter.unsure(f"inconclusive {format_word(word)}")


def equiv_line(painter: Painter, result: EquivResult) -> str:
    match result:
        case Equal(checked=checked):
            return painter.positive(f"equal (checked {checked} words)")
        case Counterexample(word=word):
            return painter.negative(f"counterexample {format_word(word)}")
        case Inconclusive(word=word):
            return inconclusive_line(painter, word)
    raise TypeError(f"not an equivalence result: {result!r}")


def classification_lines(classification: Classification) -> list[str]:
    return [f"{name}: {str(value).lower()}" for name, value in classification.flags().items()]


def trace_lines(trace: RunTrace) -> list[str]:
    lines = [f"strand: {format_word(trace.strand.upper)} / {format_word(trace.strand.lower)}"]
    for step in trace.steps:
        config = step.config
        lines.append(f"  ({config.state}, {config.upper_pos}, {config.lower_pos})  {step.rule}")
    final = trace.final
    lines.append(f"  ({final.state}, {final.upper_pos}, {final.lower_pos})  {trace.outcome.value}")
    return lines


def weak_nondeterminism_line(painter: Painter, witness: WeakNondeterminism) -> str:
    config = witness.config
    strand = witness.strand
    return painter.negative(
        f"nondeterministic {format_word(strand.upper)} / {format_word(strand.lower)}"
        f" at ({config.state}, {config.upper_pos}, {config.lower_pos})"
    )


def report_lines(painter: Painter, report: ConstructionReport) -> list[str]:
    return [painter.dim(line) for line in report.lines()]


def word_lines(words: Iterable[Word]) -> list[str]:
    return [format_word(word) for word in words]
