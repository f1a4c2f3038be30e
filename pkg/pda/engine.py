from __future__ import annotations

import logging
from collections import deque
from typing import Iterator, Optional

from core.errors import ResourceBound
from pda.automaton import PDA, PDAConfiguration
from wk.automaton import Word

logger = logging.getLogger(__name__)


def default_max_stack(word: Word) -> int:
    return len(word) + 2


def default_max_steps(pda: PDA, word: Word) -> int:
    return 10 * (len(word) + 2) * len(pda.states)


def successors(pda: PDA, word: Word, config: PDAConfiguration) -> Iterator[PDAConfiguration]:
    if not config.stack:
        return
    top = config.stack[-1]
    below = config.stack[:-1]
    for rule in pda.rules_for(config.state, top):
        if rule.read is None:
            yield PDAConfiguration(rule.target, config.input_pos, below + rule.push)
        elif config.input_pos < len(word) and word[config.input_pos] == rule.read:
            yield PDAConfiguration(rule.target, config.input_pos + 1, below + rule.push)


def pda_accepts(
    pda: PDA,
    word: Word,
    max_stack: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> bool:
    """
    Breadth-first search over configurations from (start, 0, [bottom]).
    Accepts when the input is consumed and the stack is empty. Raises
    ResourceBound when a stack or expansion cap is passed.
    """
    word = tuple(word)
    if any(symbol not in pda.input_alphabet for symbol in word):
        return False
    size = len(word)
    max_stack = default_max_stack(word) if max_stack is None else max_stack
    max_steps = default_max_steps(pda, word) if max_steps is None else max_steps
    bound = pda.input_bound_symbol

    start = PDAConfiguration(pda.start, 0, (pda.initial_stack_symbol,))
    frontier = deque([start])
    seen = {start}
    expansions = 0
    while frontier:
        config = frontier.popleft()
        expansions += 1
        if expansions > max_steps:
            raise ResourceBound(f"PDA search passed {max_steps} expansions", word)
        for nxt in successors(pda, word, config):
            if not nxt.stack and nxt.input_pos == size:
                logger.debug("PDA accepted %s after %d expansions", word, expansions)
                return True
            if nxt in seen:
                continue
            if bound is not None:
                if nxt.stack.count(bound) > size - nxt.input_pos:
                    continue
                assert len(nxt.stack) <= size + 2, f"stack height {len(nxt.stack)} on input of length {size}"
            if len(nxt.stack) > max_stack:
                raise ResourceBound(f"PDA stack passed height {max_stack}", word)
            seen.add(nxt)
            frontier.append(nxt)
    return False
