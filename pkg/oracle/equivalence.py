from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from core.errors import AlphabetMismatch, ResourceBound
from oracle.acceptor import Acceptor
from oracle.enumeration import words_up_to
from wk.automaton import Symbol, Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Equal:
    checked: int


@dataclass(frozen=True)
class Counterexample:
    word: Word
    left: bool
    right: bool


@dataclass(frozen=True)
class Inconclusive:
    word: Word
    reason: str


EquivResult = Union[Equal, Counterexample, Inconclusive]


def bounded_equiv(
    left: Acceptor, right: Acceptor, max_len: int, alphabet: Optional[Iterable[Symbol]] = None
) -> EquivResult:
    """
    Compare verdicts on every word up to max_len in length-lex order and
    return the first disagreement. A ResourceBound on either side is
    Inconclusive, never a verdict.
    """
    if alphabet is None:
        if set(left.alphabet) != set(right.alphabet):
            raise AlphabetMismatch(
                f"acceptors read different alphabets: {list(left.alphabet)} vs {list(right.alphabet)}"
            )
        alphabet = left.alphabet
    checked = 0
    for word in words_up_to(alphabet, max_len):
        try:
            left_verdict = left(word)
            right_verdict = right(word)
        except ResourceBound as exc:
            logger.warning("inconclusive on %s: %s", word, exc.reason)
            return Inconclusive(word, exc.reason)
        checked += 1
        if left_verdict != right_verdict:
            return Counterexample(word, left_verdict, right_verdict)
    return Equal(checked)
