from __future__ import annotations

import asyncio
import itertools
import logging
from typing import Iterable, Iterator

from core.errors import ResourceBound
from oracle.acceptor import Acceptor
from wk.automaton import Symbol, Word

logger = logging.getLogger(__name__)


def words_of_length(alphabet: Iterable[Symbol], length: int) -> Iterator[Word]:
    """Lexicographic in the declared alphabet order."""
    return itertools.product(tuple(alphabet), repeat=length)


def words_up_to(alphabet: Iterable[Symbol], max_len: int) -> Iterator[Word]:
    """Length-then-lexicographic order."""
    alphabet = tuple(alphabet)
    for length in range(max_len + 1):
        yield from words_of_length(alphabet, length)


def length_lex_key(alphabet: Iterable[Symbol]):
    rank = {symbol: i for i, symbol in enumerate(alphabet)}
    return lambda word: (len(word), [rank[s] for s in word])


def accepted_of_length(acceptor: Acceptor, length: int) -> list[Word]:
    accepted = []
    for word in words_of_length(acceptor.alphabet, length):
        try:
            if acceptor(word):
                accepted.append(word)
        except ResourceBound as exc:
            raise exc.with_word(word) from exc
    return accepted


def enumerate_accepted(acceptor: Acceptor, max_len: int, jobs: int = 1) -> list[Word]:
    """
    Every accepted word of length <= max_len in length-lex order. With
    jobs > 1 the length strata run in worker threads and merge in order.
    A ResourceBound on any word aborts the scan.
    """
    if jobs <= 1:
        return [word for length in range(max_len + 1) for word in accepted_of_length(acceptor, length)]
    return asyncio.run(_enumerate_concurrently(acceptor, max_len, jobs))


async def _enumerate_concurrently(acceptor: Acceptor, max_len: int, jobs: int) -> list[Word]:
    gate = asyncio.Semaphore(jobs)

    async def stratum(length: int) -> list[Word]:
        async with gate:
            return await asyncio.to_thread(accepted_of_length, acceptor, length)

    strata = await asyncio.gather(*(stratum(length) for length in range(max_len + 1)))
    logger.debug("enumerated %d strata on %d workers", len(strata), jobs)
    return [word for stratum_words in strata for word in stratum_words]
