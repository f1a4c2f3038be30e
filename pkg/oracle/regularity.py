from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from oracle.acceptor import Acceptor
from oracle.enumeration import words_up_to
from wk.automaton import Word

logger = logging.getLogger(__name__)


def verdict_matrix(acceptor: Acceptor, max_len: int, prefix_len: Optional[int] = None) -> tuple[list[Word], np.ndarray]:
    """
    Rows are prefixes up to prefix_len, columns every suffix up to max_len.
    An entry is +1 (accept) or -1 (reject) for prefix + suffix, and 0 when
    the joined word is longer than max_len.
    """
    prefix_len = (max_len + 1) // 2 if prefix_len is None else prefix_len
    words = list(words_up_to(acceptor.alphabet, max_len))
    verdict = {word: acceptor(word) for word in words}
    prefixes = [w for w in words if len(w) <= prefix_len]

    matrix = np.zeros((len(prefixes), len(words)), dtype=np.int8)
    for i, prefix in enumerate(prefixes):
        room = max_len - len(prefix)
        for j, suffix in enumerate(words):
            if len(suffix) > room:
                break
            matrix[i, j] = 1 if verdict[prefix + suffix] else -1
    return prefixes, matrix


def distinguishing_prefixes(acceptor: Acceptor, max_len: int, prefix_len: Optional[int] = None) -> list[Word]:
    """
    Greedy set of prefixes that are pairwise split by some in-bound suffix.
    Any complete DFA agreeing with the acceptor on words up to max_len needs
    a distinct state for each of them, so the size is a lower bound on its
    states. The set is not maximum; a minimal DFA may need more.
    """
    prefixes, matrix = verdict_matrix(acceptor, max_len, prefix_len)
    chosen: list[int] = []
    for i in range(len(prefixes)):
        row = matrix[i]
        if all((matrix[j] * row == -1).any() for j in chosen):
            chosen.append(i)
    logger.debug("%d of %d prefixes are pairwise distinguishable", len(chosen), len(prefixes))
    return [prefixes[i] for i in chosen]


def no_small_dfa_matches(acceptor: Acceptor, max_len: int, max_states: int) -> bool:
    """
    True when the greedy prefixes already outnumber max_states, which rules
    out every complete DFA of that size up to max_len. False only means this
    witness is too small; it does not show that a small DFA exists.
    """
    return len(distinguishing_prefixes(acceptor, max_len)) > max_states
