"""Slow, obviously-correct deciders the real engines are checked against."""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from pda.automaton import PDA
from restriction.dfa import DFA
from restriction.grammars import CFG


def strand_is_valid(upper, lower, rho) -> bool:
    if len(upper) != len(lower):
        return False
    return all((u, l) in rho.pairs for u, l in zip(upper, lower))


def wk_reaches_final(machine, upper, lower) -> bool:
    """Some configuration reachable from (q0, 0, 0) is in F with both strands read."""
    upper, lower = tuple(upper), tuple(lower)
    size = len(upper)
    start = (machine.start, 0, 0)
    seen = {start}
    frontier = deque([start])
    while frontier:
        state, i, j = frontier.popleft()
        if i == size and j == size and state in machine.finals:
            return True
        for rule in machine.transitions:
            if rule.source != state:
                continue
            if upper[i : i + len(rule.upper)] != rule.upper or lower[j : j + len(rule.lower)] != rule.lower:
                continue
            nxt = (rule.target, i + len(rule.upper), j + len(rule.lower))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False


def subset_accepts(dfa: DFA, word) -> bool:
    """Simulate the DFA as an NFA over sets of states."""
    current = {dfa.start}
    for symbol in word:
        current = {t for (s, x), t in dfa.delta.items() if s in current and x == symbol}
    return bool(current & dfa.finals)


def cfg_words(grammar: CFG, max_len: int) -> set[tuple]:
    """Words up to max_len reachable by leftmost derivations, forms capped at max_len + 2."""
    nonterminals = set(grammar.nonterminals)
    start = (grammar.start,)
    seen = {start}
    frontier = deque([start])
    words = set()
    while frontier:
        form = frontier.popleft()
        index = next((i for i, s in enumerate(form) if s in nonterminals), None)
        if index is None:
            words.add(form)
            continue
        for rule in grammar.rules_for(form[index]):
            nxt = form[:index] + rule.rhs + form[index + 1 :]
            terminals = sum(1 for s in nxt if s not in nonterminals)
            if terminals > max_len or len(nxt) > max_len + 2 or nxt in seen:
                continue
            seen.add(nxt)
            frontier.append(nxt)
    return {w for w in words if len(w) <= max_len}


def pda_derives(pda: PDA, word, depth: int) -> bool:
    """Depth-first over every computation of at most `depth` moves."""
    word = tuple(word)

    @lru_cache(maxsize=None)
    def search(state, pos, stack, left) -> bool:
        if not stack:
            return pos == len(word)
        if left == 0:
            return False
        for rule in pda.rules_for(state, stack[-1]):
            if rule.read is None:
                if search(rule.target, pos, stack[:-1] + rule.push, left - 1):
                    return True
            elif pos < len(word) and word[pos] == rule.read:
                if search(rule.target, pos + 1, stack[:-1] + rule.push, left - 1):
                    return True
        return False

    return search(pda.start, 0, (pda.initial_stack_symbol,), depth)


def is_palindrome(word) -> bool:
    return tuple(word) == tuple(reversed(word))


def is_anbncn(word) -> bool:
    n = len(word) // 3
    return n >= 1 and len(word) == 3 * n and tuple(word) == ("a",) * n + ("b",) * n + ("c",) * n


def is_anbn(word) -> bool:
    n = len(word) // 2
    return n >= 1 and len(word) == 2 * n and tuple(word) == ("a",) * n + ("b",) * n


def is_a2nbn(word) -> bool:
    word = tuple(word)
    b = word.count("b")
    return b >= 1 and word == ("a",) * (2 * b) + ("b",) * b


def is_dyck(word) -> bool:
    depth = 0
    for symbol in word:
        depth += 1 if symbol == "a" else -1
        if depth < 0:
            return False
    return bool(word) and depth == 0


def is_an_bm(word) -> bool:
    word = tuple(word)
    n = word.count("a")
    m = len(word) - n
    return n < m and word == ("a",) * n + ("b",) * m


def is_equal_ab(word) -> bool:
    word = tuple(word)
    return bool(word) and word.count("a") == word.count("b")
